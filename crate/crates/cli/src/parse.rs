//! Mini-language for regions and measures on the command line.
//!
//! Regions:  `all | cap(theta,phi,rho) | tube(theta,phi,w) |
//!            band(theta1,theta2) | not(R) | union(R1,R2) | inter(R1,R2)`
//! Measures: `lebesgue | scaled(c, R) | atom(theta,phi,mass) | sum(M1,M2)`
//! with scaling factors `const:x`, `log-lambda`, `pow:alpha`.
//!
//! Scalars are plain floats or the lambda-dependent tokens `inv-lambda`
//! (1/lambda), `inv-sqrt-lambda` (lambda^{-1/2}) and `pi`, optionally
//! with a numeric multiplier as in `2*inv-lambda`. Everything resolves
//! against the lambda supplied by the chosen basis, so one spec string
//! describes a whole family of regions or measures.

use std::sync::Arc;

use lslab_core::geom::{
    region_indicator, GeodesicAxis, Measure, Point3, QuadratureGrid, RegionSpec,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: String) -> ParseError {
        ParseError { pos: self.pos, msg }
    }

    /// Position of the next token, for error reporting.
    fn mark(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    /// Word of identifier characters: letters, digits, '-', '_', '.'
    /// and ':' (for `const:0.5`), stopping at delimiters.
    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        for (off, c) in self.src[start..].char_indices() {
            if c == '(' || c == ')' || c == ',' || c == '*' || c.is_whitespace() {
                self.pos = start + off;
                return &self.src[start..self.pos];
            }
        }
        self.pos = self.src.len();
        &self.src[start..]
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("trailing input".into()));
        }
        Ok(())
    }
}

/// Scalar: `0.5`, `pi`, `inv-lambda`, `inv-sqrt-lambda`, or a numeric
/// multiple like `2*inv-lambda`.
fn scalar(c: &mut Cursor<'_>, lambda: f64) -> Result<f64, ParseError> {
    let at = c.mark();
    let w = c.word();
    let base = match w {
        "pi" => return scaled_tail(c, std::f64::consts::PI, lambda),
        "inv-lambda" => return scaled_tail(c, 1.0 / lambda, lambda),
        "inv-sqrt-lambda" => return scaled_tail(c, 1.0 / lambda.sqrt(), lambda),
        _ => w
            .parse::<f64>()
            .map_err(|_| ParseError { pos: at, msg: format!("expected scalar, got '{w}'") })?,
    };
    scaled_tail(c, base, lambda)
}

fn scaled_tail(c: &mut Cursor<'_>, base: f64, lambda: f64) -> Result<f64, ParseError> {
    if c.peek() == Some('*') {
        c.expect('*')?;
        let rhs = scalar(c, lambda)?;
        Ok(base * rhs)
    } else {
        Ok(base)
    }
}

fn point(c: &mut Cursor<'_>, lambda: f64) -> Result<Point3, ParseError> {
    let theta = scalar(c, lambda)?;
    c.expect(',')?;
    let phi = scalar(c, lambda)?;
    Ok(Point3::from_spherical(theta, phi))
}

fn region_expr(c: &mut Cursor<'_>, lambda: f64) -> Result<RegionSpec, ParseError> {
    let at = c.mark();
    let head = c.word();
    match head {
        "all" => Ok(RegionSpec::All),
        "cap" => {
            c.expect('(')?;
            let center = point(c, lambda)?;
            c.expect(',')?;
            let radius = scalar(c, lambda)?;
            c.expect(')')?;
            Ok(RegionSpec::cap(center, radius))
        }
        "tube" => {
            c.expect('(')?;
            let normal = point(c, lambda)?;
            c.expect(',')?;
            let halfwidth = scalar(c, lambda)?;
            c.expect(')')?;
            Ok(RegionSpec::Tube { axis: GeodesicAxis::new(normal), halfwidth })
        }
        "band" => {
            c.expect('(')?;
            let t1 = scalar(c, lambda)?;
            c.expect(',')?;
            let t2 = scalar(c, lambda)?;
            c.expect(')')?;
            Ok(RegionSpec::Band { theta1: t1, theta2: t2 })
        }
        "not" => {
            c.expect('(')?;
            let inner = region_expr(c, lambda)?;
            c.expect(')')?;
            Ok(RegionSpec::complement(inner))
        }
        "union" | "inter" => {
            c.expect('(')?;
            let a = region_expr(c, lambda)?;
            c.expect(',')?;
            let b = region_expr(c, lambda)?;
            c.expect(')')?;
            Ok(if head == "union" {
                RegionSpec::union(a, b)
            } else {
                RegionSpec::intersection(a, b)
            })
        }
        _ => Err(ParseError { pos: at, msg: format!("unknown region '{head}'") }),
    }
}

/// Parse a region expression, resolving lambda-dependent scalars.
pub fn parse_region(src: &str, lambda: f64) -> Result<RegionSpec, ParseError> {
    let mut c = Cursor::new(src);
    let r = region_expr(&mut c, lambda)?;
    c.finish()?;
    r.validate()
        .map_err(|e| ParseError { pos: 0, msg: format!("invalid region: {e}") })?;
    Ok(r)
}

/// Scaling factor for `scaled(c, R)`.
fn factor(c: &mut Cursor<'_>, lambda: f64) -> Result<f64, ParseError> {
    let at = c.mark();
    let w = c.word();
    if w == "log-lambda" {
        return Ok(lambda.ln());
    }
    if let Some(x) = w.strip_prefix("const:") {
        return x
            .parse::<f64>()
            .map_err(|_| ParseError { pos: at, msg: format!("bad constant '{x}'") });
    }
    if let Some(a) = w.strip_prefix("pow:") {
        let alpha = a
            .parse::<f64>()
            .map_err(|_| ParseError { pos: at, msg: format!("bad exponent '{a}'") })?;
        return Ok(lambda.powf(alpha));
    }
    Err(ParseError { pos: at, msg: format!("unknown scaling '{w}'") })
}

fn measure_expr(
    c: &mut Cursor<'_>,
    lambda: f64,
    grid: &Arc<QuadratureGrid>,
) -> Result<Measure, ParseError> {
    let at = c.mark();
    let head = c.word();
    match head {
        "lebesgue" => Ok(Measure::lebesgue(grid.clone())),
        "scaled" => {
            c.expect('(')?;
            let f = factor(c, lambda)?;
            c.expect(',')?;
            let region = region_expr(c, lambda)?;
            c.expect(')')?;
            region.validate().map_err(|e| ParseError {
                pos: at,
                msg: format!("invalid region: {e}"),
            })?;
            let m = region_indicator(&region, grid.clone()).map_err(|e| ParseError {
                pos: at,
                msg: format!("cannot grid region: {e}"),
            })?;
            Ok(m.scaled(f))
        }
        "atom" => {
            c.expect('(')?;
            let location = point(c, lambda)?;
            c.expect(',')?;
            let mass = scalar(c, lambda)?;
            c.expect(')')?;
            if !(mass >= 0.0) {
                return Err(ParseError { pos: at, msg: format!("negative atom mass {mass}") });
            }
            let m = Measure::from_density(grid.clone(), vec![0.0; grid.len()]);
            Ok(m.with_atom(location, mass))
        }
        "sum" => {
            c.expect('(')?;
            let a = measure_expr(c, lambda, grid)?;
            c.expect(',')?;
            let b = measure_expr(c, lambda, grid)?;
            c.expect(')')?;
            let mut density = a.density;
            for (d, e) in density.iter_mut().zip(&b.density) {
                *d += e;
            }
            let mut m = Measure::from_density(grid.clone(), density);
            for atom in a.atoms.into_iter().chain(b.atoms) {
                m = m.with_atom(atom.location, atom.mass);
            }
            Ok(m)
        }
        _ => Err(ParseError { pos: at, msg: format!("unknown measure '{head}'") }),
    }
}

/// Parse a measure expression onto the given grid, resolving
/// lambda-dependent scalars and scaling factors.
pub fn parse_measure(
    src: &str,
    lambda: f64,
    grid: &Arc<QuadratureGrid>,
) -> Result<Measure, ParseError> {
    let mut c = Cursor::new(src);
    let m = measure_expr(&mut c, lambda, grid)?;
    c.finish()?;
    Ok(m)
}
