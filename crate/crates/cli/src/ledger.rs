//! Bounds on the extremal orders, each upper bound tied to a derivation
//! that re-evaluates to the stored number.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tracked quantities. Names follow the usual notation: `h_g` for the
/// smallest planar hypohamiltonian graph of girth `g`, `alpha0`/`alpha1`
/// for planar hypohamiltonian / almost hypohamiltonian minima, `C^i_3` and
/// `P^i_3` for planar 3-connected graphs in which every `i` vertices are
/// missed by some longest cycle or path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symbol {
    H,
    H4,
    H5,
    Alpha0,
    Alpha0Girth4,
    Alpha1,
    Alpha1Girth4,
    C13,
    C23,
    P13,
    P23,
    N0,
    CubicMin,
}

impl Symbol {
    pub const ALL: [Symbol; 13] = [
        Symbol::H,
        Symbol::H4,
        Symbol::H5,
        Symbol::Alpha0,
        Symbol::Alpha0Girth4,
        Symbol::Alpha1,
        Symbol::Alpha1Girth4,
        Symbol::C13,
        Symbol::C23,
        Symbol::P13,
        Symbol::P23,
        Symbol::N0,
        Symbol::CubicMin,
    ];

    pub fn notation(self) -> &'static str {
        match self {
            Symbol::H => "h",
            Symbol::H4 => "h4",
            Symbol::H5 => "h5",
            Symbol::Alpha0 => "ᾱ0",
            Symbol::Alpha0Girth4 => "ᾱ0,4",
            Symbol::Alpha1 => "ᾱ1",
            Symbol::Alpha1Girth4 => "ᾱ1,4",
            Symbol::C13 => "C̄¹₃",
            Symbol::C23 => "C̄²₃",
            Symbol::P13 => "P̄¹₃",
            Symbol::P23 => "P̄²₃",
            Symbol::N0 => "n0",
            Symbol::CubicMin => "cubic-vertex minimum",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

/// Integer arithmetic over literals with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Expr {
    /// A number taken from a verified artifact or an imported result.
    Lit { value: u64, source: String },
    Add { a: Box<Expr>, b: Box<Expr> },
    Sub { a: Box<Expr>, b: Box<Expr> },
    Mul { a: Box<Expr>, b: Box<Expr> },
}

impl Expr {
    pub fn lit(value: u64, source: impl Into<String>) -> Expr {
        Expr::Lit {
            value,
            source: source.into(),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add {
            a: Box::new(a),
            b: Box::new(b),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub {
            a: Box::new(a),
            b: Box::new(b),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul {
            a: Box::new(a),
            b: Box::new(b),
        }
    }

    /// `None` on overflow or a negative intermediate.
    pub fn eval(&self) -> Option<u64> {
        match self {
            Expr::Lit { value, .. } => Some(*value),
            Expr::Add { a, b } => a.eval()?.checked_add(b.eval()?),
            Expr::Sub { a, b } => a.eval()?.checked_sub(b.eval()?),
            Expr::Mul { a, b } => a.eval()?.checked_mul(b.eval()?),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Lit { .. } => 3,
            Expr::Mul { .. } => 2,
            Expr::Add { .. } | Expr::Sub { .. } => 1,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Lit { value, .. } => write!(f, "{value}")?,
            Expr::Add { a, b } => {
                a.write(f, 1)?;
                f.write_str(" + ")?;
                b.write(f, 2)?;
            }
            Expr::Sub { a, b } => {
                a.write(f, 1)?;
                f.write_str(" − ")?;
                b.write(f, 2)?;
            }
            Expr::Mul { a, b } => {
                a.write(f, 2)?;
                f.write_str("·")?;
                b.write(f, 3)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }

    pub fn sources(&self) -> Vec<String> {
        match self {
            Expr::Lit { source, .. } => vec![source.clone()],
            Expr::Add { a, b } | Expr::Sub { a, b } | Expr::Mul { a, b } => {
                let mut s = a.sources();
                s.extend(b.sources());
                s
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Justification {
    /// Taken from the literature; not re-proved here.
    Imported { citation: String },
    /// Computed from verified artifacts; `chain` evaluates to the bound.
    Derived { chain: Expr },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundValue {
    pub value: u64,
    pub justification: Justification,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub lower: Option<BoundValue>,
    pub upper: Option<BoundValue>,
}

impl Bound {
    pub fn lower_value(&self) -> Option<u64> {
        self.lower.as_ref().map(|b| b.value)
    }

    pub fn upper_value(&self) -> Option<u64> {
        self.upper.as_ref().map(|b| b.value)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lower_value(), self.upper_value()) {
            (Some(l), Some(u)) if l == u => write!(f, "= {l}"),
            (Some(l), Some(u)) => write!(f, "{l} ≤ · ≤ {u}"),
            (Some(l), None) => write!(f, "≥ {l}"),
            (None, Some(u)) => write!(f, "≤ {u}"),
            (None, None) => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("{symbol}: derivation {chain} does not evaluate")]
    Unevaluable { symbol: Symbol, chain: String },
    #[error("{symbol}: upper bound {value} is below what its witnesses justify ({justified})")]
    BelowWitness { symbol: Symbol, value: u64, justified: u64 },
    #[error("{symbol}: upper bound {value} does not match its derivation ({justified})")]
    ChainMismatch { symbol: Symbol, value: u64, justified: u64 },
    #[error("{symbol}: upper bound {upper} is below the lower bound {lower}")]
    Inconsistent { symbol: Symbol, lower: u64, upper: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsLedger {
    pub bounds: BTreeMap<Symbol, Bound>,
}

fn imported(value: u64, citation: &str) -> Option<BoundValue> {
    Some(BoundValue {
        value,
        justification: Justification::Imported {
            citation: citation.to_string(),
        },
    })
}

impl BoundsLedger {
    /// The state of knowledge this tool starts from.
    pub fn literature() -> Self {
        use Symbol::*;
        let gz = "Goedgebeur and Zamfirescu, lower bounds for planar hypohamiltonian graphs";
        let jooy = "Jooyandeh et al., planar hypohamiltonian graphs on 40 vertices";
        let entries = [
            (H, imported(23, gz), imported(40, jooy)),
            (H4, imported(27, gz), imported(40, jooy)),
            (H5, imported(45, gz), imported(45, gz)),
            (Alpha0, imported(23, gz), imported(40, jooy)),
            (Alpha0Girth4, imported(27, gz), imported(40, jooy)),
            (Alpha1, imported(22, "Goedgebeur and Zamfirescu, almost hypohamiltonian graphs"), imported(31, "Wiener, 31-vertex planar almost hypohamiltonian graph")),
            (Alpha1Girth4, imported(26, "Goedgebeur and Zamfirescu, almost hypohamiltonian graphs"), imported(31, "Wiener, 31-vertex planar almost hypohamiltonian graph")),
            (C13, None, imported(40, jooy)),
            (C23, None, imported(2625, jooy)),
            (P13, None, imported(156, jooy)),
            (P23, None, imported(10350, jooy)),
            (N0, None, imported(42, jooy)),
            (CubicMin, imported(4, "Zamfirescu, cubic vertices of planar hypohamiltonian graphs"), imported(30, jooy)),
        ];
        BoundsLedger {
            bounds: entries
                .into_iter()
                .map(|(s, lower, upper)| (s, Bound { lower, upper }))
                .collect(),
        }
    }

    pub fn get(&self, symbol: Symbol) -> &Bound {
        static EMPTY: Bound = Bound {
            lower: None,
            upper: None,
        };
        self.bounds.get(&symbol).unwrap_or(&EMPTY)
    }

    /// Records `value` as an upper bound justified by `chain`. The chain
    /// must evaluate to exactly `value`. Returns whether the bound improved.
    pub fn set_upper(&mut self, symbol: Symbol, value: u64, chain: Expr) -> Result<bool, LedgerError> {
        let justified = chain.eval().ok_or_else(|| LedgerError::Unevaluable {
            symbol,
            chain: chain.to_string(),
        })?;
        if value < justified {
            return Err(LedgerError::BelowWitness {
                symbol,
                value,
                justified,
            });
        }
        if value > justified {
            return Err(LedgerError::ChainMismatch {
                symbol,
                value,
                justified,
            });
        }
        let bound = self.bounds.entry(symbol).or_default();
        if let Some(lower) = bound.lower_value() {
            if value < lower {
                return Err(LedgerError::Inconsistent {
                    symbol,
                    lower,
                    upper: value,
                });
            }
        }
        if bound.upper_value().is_some_and(|u| u <= value) {
            return Ok(false);
        }
        bound.upper = Some(BoundValue {
            value,
            justification: Justification::Derived { chain },
        });
        Ok(true)
    }

    /// Tightens with whatever the chain evaluates to.
    pub fn tighten(&mut self, symbol: Symbol, chain: Expr) -> Result<bool, LedgerError> {
        let value = chain.eval().ok_or_else(|| LedgerError::Unevaluable {
            symbol,
            chain: chain.to_string(),
        })?;
        self.set_upper(symbol, value, chain)
    }

    /// Every derived bound re-evaluates to its stored value and sits above
    /// its lower bound.
    pub fn check(&self) -> Result<(), LedgerError> {
        for (&symbol, bound) in &self.bounds {
            if let (Some(lower), Some(upper)) = (bound.lower_value(), bound.upper_value()) {
                if upper < lower {
                    return Err(LedgerError::Inconsistent { symbol, lower, upper });
                }
            }
            for b in bound.lower.iter().chain(&bound.upper) {
                if let Justification::Derived { chain } = &b.justification {
                    let justified = chain.eval().ok_or_else(|| LedgerError::Unevaluable {
                        symbol,
                        chain: chain.to_string(),
                    })?;
                    if justified != b.value {
                        return Err(LedgerError::ChainMismatch {
                            symbol,
                            value: b.value,
                            justified,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Order and size of the 70-vertex planar cubic hypohamiltonian graph of
/// Araya and Wiener, used as an imported host.
pub const CUBIC_HOST_ORDER: u64 = 70;
pub const CUBIC_HOST_SIZE: u64 = 105;
const CUBIC_HOST: &str = "Araya-Wiener 70-vertex planar cubic hypohamiltonian graph";

/// Inserting a graph of order `n` into the cubic host, then contracting
/// the host's edges.
pub fn c23_chain(n: u64, witness: &str) -> Expr {
    let inserted = Expr::mul(
        Expr::sub(Expr::lit(n, witness), Expr::lit(1, "deleted cubic vertex")),
        Expr::lit(CUBIC_HOST_ORDER, CUBIC_HOST),
    );
    Expr::sub(inserted, Expr::lit(CUBIC_HOST_SIZE, "edges of the cubic host"))
}

/// Inserting a graph of order `n` into K4.
pub fn p13_chain(n: u64, witness: &str) -> Expr {
    Expr::mul(
        Expr::lit(4, "vertices of K4"),
        Expr::sub(Expr::lit(n, witness), Expr::lit(1, "deleted cubic vertex")),
    )
}

/// Insert the cubic host into K4 to get `H`, insert a graph of order `n`
/// into `H`, then contract the edges of `H`.
pub fn p23_chain(n: u64, witness: &str) -> Expr {
    let host_order = Expr::mul(
        Expr::lit(4, "vertices of K4"),
        Expr::sub(Expr::lit(CUBIC_HOST_ORDER, CUBIC_HOST), Expr::lit(1, "deleted cubic vertex")),
    );
    let host_size = Expr::add(
        Expr::mul(
            Expr::lit(4, "vertices of K4"),
            Expr::sub(Expr::lit(CUBIC_HOST_SIZE, "edges of the cubic host"), Expr::lit(3, "edges at the deleted vertex")),
        ),
        Expr::lit(6, "edges of K4"),
    );
    let inserted = Expr::mul(
        host_order,
        Expr::sub(Expr::lit(n, witness), Expr::lit(1, "deleted cubic vertex")),
    );
    Expr::sub(inserted, host_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chains_evaluate_to_the_claimed_numbers() {
        assert_eq!(c23_chain(34, "G").eval(), Some(2205));
        assert_eq!(p13_chain(34, "G").eval(), Some(132));
        assert_eq!(p23_chain(34, "G").eval(), Some(8694));
        assert_eq!(c23_chain(34, "G").to_string(), "(34 − 1)·70 − 105");
        assert_eq!(p13_chain(34, "G").to_string(), "4·(34 − 1)");
        assert_eq!(p23_chain(34, "G").to_string(), "4·(70 − 1)·(34 − 1) − (4·(105 − 3) + 6)");
    }

    #[test]
    fn literature_is_consistent() {
        let l = BoundsLedger::literature();
        l.check().unwrap();
        assert_eq!(l.get(Symbol::H4).to_string(), "27 ≤ · ≤ 40");
        assert_eq!(l.get(Symbol::H5).to_string(), "= 45");
    }

    #[test]
    fn set_upper_rules() {
        let mut l = BoundsLedger::literature();
        let w = Expr::lit(34, "witness");
        assert_eq!(
            l.set_upper(Symbol::H4, 33, w.clone()),
            Err(LedgerError::BelowWitness {
                symbol: Symbol::H4,
                value: 33,
                justified: 34
            })
        );
        assert!(matches!(l.set_upper(Symbol::H4, 35, w.clone()), Err(LedgerError::ChainMismatch { .. })));
        assert_eq!(l.set_upper(Symbol::H4, 34, w.clone()), Ok(true));
        assert_eq!(l.set_upper(Symbol::H4, 34, w), Ok(false));
        assert_eq!(l.tighten(Symbol::H4, Expr::lit(36, "worse")), Ok(false));
        assert!(matches!(
            l.tighten(Symbol::H4, Expr::lit(20, "too small")),
            Err(LedgerError::Inconsistent { .. })
        ));
        assert!(matches!(
            l.tighten(Symbol::C23, Expr::sub(Expr::lit(1, "a"), Expr::lit(2, "b"))),
            Err(LedgerError::Unevaluable { .. })
        ));
        l.check().unwrap();
    }

    #[test]
    fn tampered_chain_is_caught() {
        let mut l = BoundsLedger::literature();
        l.tighten(Symbol::P13, p13_chain(34, "G")).unwrap();
        l.bounds.get_mut(&Symbol::P13).unwrap().upper.as_mut().unwrap().value = 131;
        assert!(matches!(l.check(), Err(LedgerError::ChainMismatch { .. })));
    }
}
