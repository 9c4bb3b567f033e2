//! JSON symbol files.
//!
//! ```json
//! {"type": "compose",
//!  "outer": {"type": "blaschke", "zeros": [[0, 0], [0.5, 0]], "rotation": [1, 0]},
//!  "inner": {"type": "mobius", "alpha": [0.2, -0.1]}}
//! ```
//!
//! Complex numbers are `[re, im]` pairs. `rotation` defaults to `[1, 0]` and
//! `poly` coefficients are in ascending order.

use std::path::{Path, PathBuf};

use minspace_core::symbol::{validate_self_map, Node, SelfMapReport};
use minspace_core::{Complex, Symbol};
use serde::{Deserialize, Serialize};

/// Default tolerance for the self-map check.
pub const SELF_MAP_TOL: f64 = 1e-4;
/// Circle samples used by the self-map check.
pub const SELF_MAP_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SymbolSpec {
    Mobius {
        alpha: [f64; 2],
    },
    Blaschke {
        zeros: Vec<[f64; 2]>,
        #[serde(default = "unit")]
        rotation: [f64; 2],
    },
    Poly {
        coeffs: Vec<[f64; 2]>,
    },
    Compose {
        outer: Box<SymbolSpec>,
        inner: Box<SymbolSpec>,
    },
    Product {
        left: Box<SymbolSpec>,
        right: Box<SymbolSpec>,
    },
    Const {
        c: [f64; 2],
    },
    Identity {},
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

fn cx(p: [f64; 2]) -> Complex {
    Complex::new(p[0], p[1])
}

fn pair(c: Complex) -> [f64; 2] {
    [c.re, c.im]
}

impl SymbolSpec {
    pub fn to_symbol(&self) -> minspace_core::Result<Symbol> {
        Ok(match self {
            SymbolSpec::Mobius { alpha } => Symbol::mobius(cx(*alpha))?,
            SymbolSpec::Blaschke { zeros, rotation } => {
                Symbol::blaschke(zeros.iter().copied().map(cx).collect(), cx(*rotation))?
            }
            SymbolSpec::Poly { coeffs } => Symbol::polynomial(coeffs.iter().copied().map(cx).collect())?,
            SymbolSpec::Compose { outer, inner } => Symbol::compose(outer.to_symbol()?, inner.to_symbol()?),
            SymbolSpec::Product { left, right } => Symbol::product(left.to_symbol()?, right.to_symbol()?),
            SymbolSpec::Const { c } => Symbol::constant(cx(*c))?,
            SymbolSpec::Identity {} => Symbol::identity(),
        })
    }

    /// Canonical spec of a symbol (rotation always written out).
    pub fn from_symbol(sym: &Symbol) -> Self {
        match sym.node() {
            Node::Mobius { alpha } => SymbolSpec::Mobius { alpha: pair(*alpha) },
            Node::Blaschke { zeros, rotation } => {
                SymbolSpec::Blaschke { zeros: zeros.iter().copied().map(pair).collect(), rotation: pair(*rotation) }
            }
            Node::Polynomial { coeffs } => SymbolSpec::Poly { coeffs: coeffs.iter().copied().map(pair).collect() },
            Node::Compose { outer, inner } => SymbolSpec::Compose {
                outer: Box::new(Self::from_symbol(outer)),
                inner: Box::new(Self::from_symbol(inner)),
            },
            Node::Product { left, right } => SymbolSpec::Product {
                left: Box::new(Self::from_symbol(left)),
                right: Box::new(Self::from_symbol(right)),
            },
            Node::Constant(c) => SymbolSpec::Const { c: pair(*c) },
            Node::Identity => SymbolSpec::Identity {},
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("symbol specs always serialize")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed symbol spec at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid symbol parameters: {0}")]
    Invalid(#[from] minspace_core::Error),
    #[error(
        "not a self-map of the disk: max |psi| = {:.6} at z = {:.6} exceeds 1 + {}",
        .0.max_modulus, .0.argmax, .0.tol
    )]
    NotSelfMap(SelfMapReport),
}

#[derive(Debug, Clone)]
pub struct ParsedSymbol {
    pub spec: SymbolSpec,
    pub symbol: Symbol,
    pub report: SelfMapReport,
}

pub fn parse_symbol_str(text: &str) -> Result<ParsedSymbol, ParseError> {
    let spec: SymbolSpec = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let symbol = spec.to_symbol()?;
    let report = validate_self_map(&symbol, SELF_MAP_SAMPLES, SELF_MAP_TOL);
    if !report.accepted() {
        return Err(ParseError::NotSelfMap(report));
    }
    Ok(ParsedSymbol { spec, symbol, report })
}

pub fn parse_symbol(path: &Path) -> Result<ParsedSymbol, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.to_owned(), source })?;
    parse_symbol_str(&text)
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}
