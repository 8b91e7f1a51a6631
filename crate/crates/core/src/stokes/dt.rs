//! Built-in DT invariant models.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{rational, LatticeVector, Rational};

/// A rule assigning DT invariants to classes, symmetric under `α ↦ −α`.
#[derive(Clone, Debug, PartialEq)]
pub enum DtModel {
    /// `1` on `±[S_i]`, else `0`.
    SimplesOnly,
    /// `1` on `±([S_i] + ⋯ + [S_j])`, else `0`.
    AnIntervals,
    /// `1` on simples, `(−1)^{λ−1}λ` on `±([S_i] + [S_{i+1}])`, else `0`.
    KroneckerChain(u32),
    /// Explicit values on effective classes; anything else has no rule.
    Table(BTreeMap<LatticeVector, Rational>),
}

impl DtModel {
    /// The value on `c`, or `None` when the model has no rule for it.
    pub fn value(&self, c: &LatticeVector) -> Option<Rational> {
        let c = if c.coords().iter().all(|&a| a <= 0) { -c } else { c.clone() };
        if let DtModel::Table(t) = self {
            return t.get(&c).cloned();
        }
        if !c.is_effective() {
            return Some(Rational::zero());
        }
        let support = c.support();
        let thin = c.coords().iter().all(|&a| a <= 1);
        let simple = c.len() == 1;
        let interval = thin && support.last().unwrap() - support[0] + 1 == support.len();
        Some(match self {
            DtModel::SimplesOnly => indicator(simple),
            DtModel::AnIntervals => indicator(interval),
            DtModel::KroneckerChain(lambda) => {
                if simple {
                    Rational::one()
                } else if interval && support.len() == 2 {
                    let l = i64::from(*lambda);
                    rational(if l % 2 == 1 { l } else { -l })
                } else {
                    Rational::zero()
                }
            }
            DtModel::Table(_) => unreachable!(),
        })
    }

    pub fn name(&self) -> String {
        match self {
            DtModel::SimplesOnly => "simples-only".into(),
            DtModel::AnIntervals => "an-intervals".into(),
            DtModel::KroneckerChain(l) => format!("kronecker-chain({l})"),
            DtModel::Table(_) => "table".into(),
        }
    }
}

fn indicator(b: bool) -> Rational {
    if b {
        Rational::one()
    } else {
        Rational::zero()
    }
}
