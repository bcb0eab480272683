use std::collections::HashSet;
use std::sync::Arc;

use num_traits::One;

use super::{Monomial, Polynomial, Rational, VarRegistry};
use crate::error::{Error, Result};

/// Variables `v_1..v_m` constrained by `v_1^2 + ... + v_m^2 = 1`.
///
/// The last variable is distinguished: normal forms contain it with
/// exponent at most one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphereBlock {
    vars: Vec<usize>,
}

impl SphereBlock {
    pub fn new(vars: Vec<usize>) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidArgument("empty sphere block".into()));
        }
        let mut seen = HashSet::new();
        for &v in &vars {
            if !seen.insert(v) {
                return Err(Error::OverlappingBlocks(v));
            }
        }
        Ok(SphereBlock { vars })
    }

    /// Block over the contiguous ids `start..start + len`.
    pub fn contiguous(start: usize, len: usize) -> Self {
        SphereBlock {
            vars: (start..start + len).collect(),
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn distinguished(&self) -> usize {
        *self.vars.last().expect("nonempty block")
    }

    /// `sum v_i^2 - 1`.
    pub fn relation(&self, reg: &Arc<VarRegistry>) -> Polynomial {
        let mut p = -Polynomial::one(reg);
        for &v in &self.vars {
            p = p + Polynomial::monomial(reg, Monomial::from_pairs([(v, 2)]), Rational::one());
        }
        p
    }

    /// `1 - sum_{i<m} v_i^2`, the replacement for `v_m^2`.
    fn rewrite_target(&self, reg: &Arc<VarRegistry>) -> Polynomial {
        let mut p = Polynomial::one(reg);
        for &v in &self.vars[..self.vars.len() - 1] {
            p = p - Polynomial::monomial(reg, Monomial::from_pairs([(v, 2)]), Rational::one());
        }
        p
    }
}

fn check_blocks(blocks: &[SphereBlock], nvars: usize) -> Result<()> {
    let mut seen = HashSet::new();
    for b in blocks {
        for &v in b.vars() {
            if v >= nvars {
                return Err(Error::UnknownVariable(v));
            }
            if !seen.insert(v) {
                return Err(Error::OverlappingBlocks(v));
            }
        }
    }
    Ok(())
}

impl Polynomial {
    /// Reduces modulo the sphere relations of `blocks` by rewriting
    /// `v_m^2 -> 1 - sum_{i<m} v_i^2` in every block until no distinguished
    /// variable has exponent above one.
    ///
    /// Blocks must be pairwise disjoint; the rewrite system is then confluent
    /// and the result is the unique normal form of the residue class.
    pub fn normal_form(&self, blocks: &[SphereBlock]) -> Result<Polynomial> {
        let reg = self.registry().clone();
        check_blocks(blocks, reg.len())?;
        let mut current = self.clone();
        // Rewriting one block only introduces that block's own
        // non-distinguished variables, so one pass per block reaches the fixpoint.
        for block in blocks {
            let d = block.distinguished();
            if current.terms().all(|(m, _)| m.exponent(d) < 2) {
                continue;
            }
            let target = block.rewrite_target(&reg);
            let mut target_powers = vec![Polynomial::one(&reg)];
            let mut out = Polynomial::zero(&reg);
            for (m, c) in current.terms() {
                let e = m.exponent(d);
                if e < 2 {
                    out.add_term(m.clone(), c.clone());
                    continue;
                }
                let q = (e / 2) as usize;
                while target_powers.len() <= q {
                    let next = &target_powers[target_powers.len() - 1] * &target;
                    target_powers.push(next);
                }
                let base = Polynomial::monomial(&reg, m.with_exponent(d, e % 2), c.clone());
                for (mm, cc) in (&base * &target_powers[q]).terms {
                    out.add_term(mm, cc);
                }
            }
            current = out;
        }
        Ok(current)
    }
}
