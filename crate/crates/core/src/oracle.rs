//! Brute-force reference decoders. Slow and obviously correct.

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::frs_decode::InterpolationPoly;
use crate::matrix::{Matrix, ReceivedWord};
use crate::par::{self, Exec};
use crate::poly::Poly;

/// A code whose messages are coefficient vectors over its field.
pub trait Code: Sync {
    type Message: Clone + Send;

    fn field(&self) -> &FieldCtx;
    /// Number of field coefficients in a message.
    fn message_len(&self) -> usize;
    fn message_from_coeffs(&self, coeffs: Vec<Fe>) -> Self::Message;
    fn encode_message(&self, msg: &Self::Message) -> Matrix;
}

#[derive(Clone, Copy, Debug)]
pub struct EnumBudget {
    pub max_messages: u64,
    pub exec: Exec,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget { max_messages: 1_000_000, exec: Exec::default() }
    }
}

impl EnumBudget {
    fn count(&self, q: u32, len: usize) -> Result<u64> {
        let needed = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        if needed > self.max_messages as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.max_messages });
        }
        Ok(needed as u64)
    }
}

/// Coefficients whose base-`q` digits spell `index`, first coefficient most
/// significant. Increasing indices give lexicographic coefficient order.
pub fn coeffs_at(mut index: u64, q: u32, len: usize) -> Vec<Fe> {
    let mut c = vec![Fe::ZERO; len];
    for slot in c.iter_mut().rev() {
        *slot = Fe((index % q as u64) as u32);
        index /= q as u64;
    }
    c
}

/// Number of identical columns.
pub fn agreement(codeword: &Matrix, y: &ReceivedWord) -> Result<usize> {
    codeword.agreement(y)
}

/// Every message whose encoding agrees with `y` in at least `t` columns, in
/// lexicographic coefficient order.
pub fn oracle_list_decode<C: Code>(
    code: &C,
    y: &ReceivedWord,
    t: usize,
    budget: &EnumBudget,
) -> Result<Vec<C::Message>> {
    let q = code.field().order();
    let len = code.message_len();
    let total = budget.count(q, len)?;
    let probe = code.encode_message(&code.message_from_coeffs(vec![Fe::ZERO; len]));
    probe.agreement(y)?;
    Ok(par::filter_map_range(budget.exec, total, |i| {
        let msg = code.message_from_coeffs(coeffs_at(i, q, len));
        let a = code.encode_message(&msg).agreement(y).expect("shape checked");
        (a >= t).then_some(msg)
    }))
}

/// How a candidate root is substituted into `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMode {
    /// `Y_i = f(g^{i-1} X)`.
    Shift(Fe),
    /// `Y_i = f^{(i-1)}(X)`.
    Derivative,
}

/// Every `f` of degree `< k` making the composed polynomial vanish.
pub fn oracle_y_roots(
    q: &InterpolationPoly,
    k: usize,
    f: &FieldCtx,
    mode: RootMode,
    budget: &EnumBudget,
) -> Result<Vec<Poly>> {
    let total = budget.count(f.order(), k)?;
    Ok(par::filter_map_range(budget.exec, total, |i| {
        let cand = Poly::from_coeffs(coeffs_at(i, f.order(), k));
        let composed = match mode {
            RootMode::Shift(g) => q.compose_shift(&cand, g, f),
            RootMode::Derivative => q.compose_derivative(&cand, f),
        };
        composed.is_zero().then_some(cand)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frs::FrsParams;

    fn ip(coeffs: &[&[u32]]) -> InterpolationPoly {
        InterpolationPoly::new(
            coeffs.iter().map(|c| Poly::from_coeffs(c.iter().map(|&x| Fe(x)).collect())).collect(),
            0,
        )
    }

    #[test]
    fn y_roots_examples() {
        let f5 = FieldCtx::new(5).unwrap();
        let b = EnumBudget::default();
        // Y1 - Y2
        let q = ip(&[&[], &[1], &[4]]);
        let roots = oracle_y_roots(&q, 2, &f5, RootMode::Shift(Fe(2)), &b).unwrap();
        assert_eq!(roots, f5.elements().map(Poly::constant).collect::<Vec<_>>());
        // Y2 - 1 in derivative mode: f' = 1
        let f13 = FieldCtx::new(13).unwrap();
        let q = ip(&[&[12], &[], &[1]]);
        let roots = oracle_y_roots(&q, 2, &f13, RootMode::Derivative, &b).unwrap();
        let want: Vec<Poly> = f13.elements().map(|c| Poly::from_coeffs(vec![c, Fe(1)])).collect();
        assert_eq!(roots, want);
        // Y1
        let q = ip(&[&[], &[1]]);
        let roots = oracle_y_roots(&q, 3, &f5, RootMode::Shift(Fe(2)), &b).unwrap();
        assert_eq!(roots, vec![Poly::zero()]);
    }

    #[test]
    fn list_decode_trivial_thresholds() {
        let p = FrsParams::new(5, 2, 2).unwrap();
        let b = EnumBudget::default();
        let f = Poly::from_coeffs(vec![Fe(3), Fe(1)]);
        let y = p.encode_message(&f);
        assert_eq!(oracle_list_decode(&p, &y, 2, &b).unwrap(), vec![f]);
        assert_eq!(oracle_list_decode(&p, &y, 0, &b).unwrap().len(), 25);
        let bad = Matrix::zeros(2, 3);
        assert!(matches!(oracle_list_decode(&p, &bad, 0, &b), Err(Error::ShapeMismatch { .. })));
        let tight = EnumBudget { max_messages: 24, ..b };
        assert!(matches!(oracle_list_decode(&p, &y, 0, &tight), Err(Error::BudgetExceeded { needed: 25, .. })));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let v: Vec<Poly> = (0..25).map(|i| Poly::from_coeffs(coeffs_at(i, 5, 2))).collect();
        let mut sorted = v.clone();
        sorted.sort();
        assert_eq!(v, sorted);
    }

    #[test]
    fn order_independent() {
        let p = FrsParams::new(7, 2, 2).unwrap();
        let y = p.encode_message(&Poly::from_coeffs(vec![Fe(1), Fe(2)]));
        let seq = EnumBudget { exec: Exec::Sequential, ..Default::default() };
        let par = EnumBudget { exec: Exec::Parallel, ..Default::default() };
        assert_eq!(
            oracle_list_decode(&p, &y, 2, &seq).unwrap(),
            oracle_list_decode(&p, &y, 2, &par).unwrap()
        );
    }

    #[test]
    fn agreement_examples() {
        let p = FrsParams::new(13, 4, 2).unwrap();
        let c = p.encode_message(&Poly::x());
        assert_eq!(agreement(&c, &c).unwrap(), 3);
        let mut y = c.clone();
        y.set(0, 1, Fe(0));
        assert_eq!(agreement(&c, &y).unwrap(), 2);
        let far = Matrix::from_columns(
            4,
            (0..3).map(|i| c.column(i).iter().map(|&v| Fe((v.0 + 1) % 13)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(agreement(&c, &far).unwrap(), 0);
    }
}
