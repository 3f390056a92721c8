use std::cmp::Ordering;

use super::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum OrderKind {
    #[default]
    DegRevLex,
    Lex,
}

/// A monomial order together with a variable ranking.
///
/// `permutation[k]` is the index of the variable treated as the `k`-th most
/// significant one. The identity permutation ranks variables in ambient order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    permutation: Option<Vec<usize>>,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::degrevlex()
    }
}

impl TermOrder {
    pub fn degrevlex() -> Self {
        TermOrder { kind: OrderKind::DegRevLex, permutation: None }
    }

    pub fn lex() -> Self {
        TermOrder { kind: OrderKind::Lex, permutation: None }
    }

    /// Panics unless `permutation` is a permutation of `0..len`.
    pub fn with_permutation(kind: OrderKind, permutation: Vec<usize>) -> Self {
        let mut seen = vec![false; permutation.len()];
        for &p in &permutation {
            assert!(p < seen.len() && !seen[p], "not a permutation: {permutation:?}");
            seen[p] = true;
        }
        TermOrder { kind, permutation: Some(permutation) }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    fn exponent(&self, m: &Monomial, rank: usize) -> u32 {
        match &self.permutation {
            Some(p) => m.exponents()[p[rank]],
            None => m.exponents()[rank],
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars();
        match self.kind {
            OrderKind::Lex => (0..n)
                .map(|k| self.exponent(a, k).cmp(&self.exponent(b, k)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal),
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                (0..n)
                    .rev()
                    .map(|k| self.exponent(b, k).cmp(&self.exponent(a, k)))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            }),
        }
    }
}
