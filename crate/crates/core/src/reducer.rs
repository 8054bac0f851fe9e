//! Normal forms modulo the linked-pair relation, by rewriting every factor
//! `A_i A_i A_j` as `[2]_q A_i A_j A_i - A_j A_i A_i + rho A_j`.
//!
//! Every replacement word is strictly smaller than `IIJ` in graded lex order
//! and the pattern `IIJ` cannot overlap itself, so the system terminates and
//! normal forms are unique.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::freealg::{NCPolynomial, Word};
use crate::qcoeff::{q_int, RhoScalar};

/// Whether `rho` is kept as a formal scalar or set to zero (plain q-Serre).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RhoMode {
    #[default]
    Formal,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("the zero polynomial has no leading word")]
    ZeroInput,
}

/// `IIJ -> [2]_q IJI - JII + rho J`, or its `rho = 0` truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pattern: Word,
    replacement: NCPolynomial,
}

impl RewriteRule {
    pub fn new(mode: RhoMode) -> Self {
        let w = |s| Word::parse(s).expect("valid word");
        let mut replacement = NCPolynomial::zero();
        replacement.add_term(w("IJI"), RhoScalar::constant(q_int(2)));
        replacement.add_term(w("JII"), -&RhoScalar::one());
        if mode == RhoMode::Formal {
            replacement.add_term(w("J"), RhoScalar::rho());
        }
        Self { pattern: w("IIJ"), replacement }
    }

    pub fn pattern(&self) -> Word {
        self.pattern
    }

    pub fn replacement(&self) -> &NCPolynomial {
        &self.replacement
    }

    /// Rewrites the occurrence of the pattern starting at `pos`, scaled by `c`.
    pub fn rewrite_at(&self, w: &Word, pos: usize, c: &RhoScalar) -> Vec<(Word, RhoScalar)> {
        debug_assert!(redex_positions(w).contains(&pos));
        self.replacement
            .terms()
            .map(|(rw, rc)| (w.splice(pos, self.pattern.len(), rw), c * rc))
            .collect()
    }
}

/// Bit `t` is set iff the letters at bit indices `t+2, t+1, t` read `I I J`.
fn redex_mask(w: &Word) -> u128 {
    let len = w.len();
    if len < 3 {
        return 0;
    }
    let b = w.bits();
    (b >> 2) & (b >> 1) & !b & crate::freealg::low_mask(len - 2)
}

/// Start positions (letter indices) of every `IIJ` factor, ascending.
pub fn redex_positions(w: &Word) -> Vec<usize> {
    let len = w.len();
    let mut m = redex_mask(w);
    let mut out = Vec::new();
    while m != 0 {
        let t = m.trailing_zeros() as usize;
        out.push(len - 3 - t);
        m &= m - 1;
    }
    out.reverse();
    out
}

pub fn leftmost_redex(w: &Word) -> Option<usize> {
    let m = redex_mask(w);
    (m != 0).then(|| w.len() - 3 - (127 - m.leading_zeros() as usize))
}

/// A word is normal iff it has no `IIJ` factor.
pub fn is_normal(w: &Word) -> bool {
    redex_mask(w) == 0
}

pub fn is_normal_form(x: &NCPolynomial) -> bool {
    x.terms().all(|(w, _)| is_normal(w))
}

/// Largest word of `x` in graded lex order with `I > J`.
pub fn leading_word(x: &NCPolynomial) -> Result<Word, ReduceError> {
    x.max_word().ok_or(ReduceError::ZeroInput)
}

/// Which redex of a word is rewritten in a pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedexChoice {
    Leftmost,
    /// Random position per word, and words may randomly sit out a pass.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReduceStats {
    pub passes: usize,
    pub steps: usize,
    /// Largest term count seen at the start of any pass.
    pub peak_terms: usize,
}

/// Pass-based reducer: every pass rewrites one redex in each non-normal word
/// and merges coefficients before the next pass.
#[derive(Debug, Clone)]
pub struct Reducer {
    rule: RewriteRule,
    choice: RedexChoice,
}

impl Reducer {
    pub fn new(mode: RhoMode) -> Self {
        Self { rule: RewriteRule::new(mode), choice: RedexChoice::Leftmost }
    }

    pub fn with_choice(mut self, choice: RedexChoice) -> Self {
        self.choice = choice;
        self
    }

    pub fn rule(&self) -> &RewriteRule {
        &self.rule
    }

    pub fn reduce(&self, x: &NCPolynomial) -> NCPolynomial {
        self.reduce_observed(x, |_, _| {}).0
    }

    pub fn reduce_with_stats(&self, x: &NCPolynomial) -> (NCPolynomial, ReduceStats) {
        self.reduce_observed(x, |_, _| {})
    }

    /// Like [`Reducer::reduce_with_stats`], calling `on_step(from, to)` for
    /// every single rewrite, with `to` the words it produced.
    pub fn reduce_observed(
        &self,
        x: &NCPolynomial,
        mut on_step: impl FnMut(&Word, &[Word]),
    ) -> (NCPolynomial, ReduceStats) {
        let mut rng = match self.choice {
            RedexChoice::Leftmost => None,
            RedexChoice::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        let mut stats = ReduceStats::default();
        let mut done = NCPolynomial::zero();
        let mut pending: BTreeMap<Word, RhoScalar> = BTreeMap::new();
        for (w, c) in x.terms() {
            if is_normal(w) {
                done.add_term(*w, c.clone());
            } else {
                pending.insert(*w, c.clone());
            }
        }

        while !pending.is_empty() {
            stats.passes += 1;
            stats.peak_terms = stats.peak_terms.max(pending.len() + done.len());
            let mut next = NCPolynomial::zero();
            let mut rewrote = false;
            let n = pending.len();
            for (idx, (w, c)) in std::mem::take(&mut pending).into_iter().enumerate() {
                let pos = match rng.as_mut() {
                    None => leftmost_redex(&w),
                    Some(rng) => {
                        let last_chance = !rewrote && idx + 1 == n;
                        if !last_chance && rng.gen_bool(0.3) {
                            None
                        } else {
                            let ps = redex_positions(&w);
                            Some(ps[rng.gen_range(0..ps.len())])
                        }
                    }
                };
                let Some(pos) = pos else {
                    next.add_term(w, c);
                    continue;
                };
                rewrote = true;
                stats.steps += 1;
                let out = self.rule.rewrite_at(&w, pos, &c);
                let words: Vec<Word> = out.iter().map(|(w, _)| *w).collect();
                on_step(&w, &words);
                for (w2, c2) in out {
                    next.add_term(w2, c2);
                }
            }
            for (w, c) in next.into_terms() {
                if is_normal(&w) {
                    done.add_term(w, c);
                } else {
                    pending.insert(w, c);
                }
            }
        }
        stats.peak_terms = stats.peak_terms.max(done.len());
        (done, stats)
    }
}

/// Normal form of `x` with leftmost redex selection.
pub fn reduce(x: &NCPolynomial, mode: RhoMode) -> NCPolynomial {
    Reducer::new(mode).reduce(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{monomial, Letter};
    use crate::qcoeff::LaurentScalar;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn q(x: LaurentScalar) -> RhoScalar {
        RhoScalar::constant(x)
    }

    fn poly(terms: &[(&str, RhoScalar)]) -> NCPolynomial {
        terms.iter().map(|(s, c)| (w(s), c.clone())).collect()
    }

    #[test]
    fn rewrites_the_pattern_once() {
        let out = reduce(&NCPolynomial::from_word(w("IIJ")), RhoMode::Formal);
        let expected = poly(&[
            ("IJI", q(q_int(2))),
            ("JII", -&RhoScalar::one()),
            ("J", RhoScalar::rho()),
        ]);
        assert_eq!(out, expected);

        let out = reduce(&NCPolynomial::from_word(w("IIJ")), RhoMode::Zero);
        assert_eq!(out, poly(&[("IJI", q(q_int(2))), ("JII", -&RhoScalar::one())]));
    }

    #[test]
    fn cube_expansion() {
        // I^3 J = ([2]^2 - 1) IJII - [2] JIII + rho ([2] JI + IJ)
        let two = q_int(2);
        let expected = poly(&[
            ("IJII", q(&(&two * &two) - &LaurentScalar::one())),
            ("JIII", q(-&two)),
            ("JI", RhoScalar::monomial(two.clone(), 1)),
            ("IJ", RhoScalar::rho()),
        ]);
        assert_eq!(reduce(&monomial(3, 1, 0), RhoMode::Formal), expected);
    }

    #[test]
    fn normal_words_are_fixed() {
        let x = NCPolynomial::from_word(w("IJIJI"));
        assert_eq!(reduce(&x, RhoMode::Formal), x);
        assert!(is_normal(&w("IJIJI")));
        assert!(!is_normal(&w("JIIJ")));
    }

    #[test]
    fn redex_positions_found() {
        assert_eq!(redex_positions(&w("IIJIIJ")), vec![0, 3]);
        assert_eq!(redex_positions(&w("IIIJ")), vec![1]);
        assert_eq!(leftmost_redex(&w("JIIJIIJ")), Some(1));
        assert_eq!(leftmost_redex(&w("IJIJ")), None);
        assert_eq!(leftmost_redex(&w("II")), None);
        let long = Word::i_pow(100).concat(&Word::j_pow(28));
        assert_eq!(leftmost_redex(&long), Some(98));
    }

    #[test]
    fn leading_words() {
        let x = poly(&[("IIJ", RhoScalar::one()), ("JII", RhoScalar::one())]);
        assert_eq!(leading_word(&x), Ok(w("IIJ")));
        assert_eq!(leading_word(&NCPolynomial::from_word(w("JIJ"))), Ok(w("JIJ")));
        let y = poly(&[("IJI", q(q_int(2))), ("JII", -&RhoScalar::one())]);
        assert_eq!(leading_word(&y), Ok(w("IJI")));
        assert_eq!(leading_word(&NCPolynomial::zero()), Err(ReduceError::ZeroInput));
    }

    #[test]
    fn defining_relation_reduces_to_zero() {
        // I^2 J - [2] IJI + J I^2 - rho J
        let rel = poly(&[
            ("IIJ", RhoScalar::one()),
            ("IJI", q(-&q_int(2))),
            ("JII", RhoScalar::one()),
            ("J", -&RhoScalar::rho()),
        ]);
        assert!(reduce(&rel, RhoMode::Formal).is_zero());
        assert!(!reduce(&rel, RhoMode::Zero).is_zero());
        assert!(reduce(&rel.map_coeffs(RhoScalar::truncate_rho), RhoMode::Zero).is_zero());
    }

    #[test]
    fn stats_are_recorded() {
        let (_, stats) = Reducer::new(RhoMode::Formal).reduce_with_stats(&monomial(3, 1, 0));
        assert_eq!(stats.passes, 2);
        assert!(stats.steps >= 2);
        assert!(stats.peak_terms >= 3);
    }

    fn word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::bool::weighted(0.6), 0..=max).prop_map(|bs| {
            Word::from_letters(&bs.into_iter().map(|b| if b { Letter::I } else { Letter::J }).collect::<Vec<_>>())
        })
    }

    fn nc(max: usize) -> impl Strategy<Value = NCPolynomial> {
        prop::collection::vec((word(max), -3i64..4, 0usize..2), 1..4).prop_map(|ts| {
            ts.into_iter()
                .map(|(w, c, p)| (w, RhoScalar::monomial(LaurentScalar::from_int(c), p)))
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn every_step_decreases(x in nc(9)) {
            let mut ok = true;
            Reducer::new(RhoMode::Formal).reduce_observed(&x, |from, to| {
                ok &= to.iter().all(|t| t < from);
            });
            prop_assert!(ok);
        }

        #[test]
        fn redex_order_is_irrelevant(x in nc(9), seed in any::<u64>()) {
            let a = reduce(&x, RhoMode::Formal);
            let b = Reducer::new(RhoMode::Formal).with_choice(RedexChoice::Seeded(seed)).reduce(&x);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn idempotent_and_normal(x in nc(9)) {
            let a = reduce(&x, RhoMode::Formal);
            prop_assert!(is_normal_form(&a));
            prop_assert_eq!(reduce(&a, RhoMode::Formal), a);
        }

        #[test]
        fn linear(x in nc(8), y in nc(8), a in -3i64..4, b in 1i64..3) {
            let sa = q(LaurentScalar::from_int(a));
            let sb = RhoScalar::monomial(LaurentScalar::q_pow(b), 1);
            let lhs = reduce(&(&x.scale(&sa) + &y.scale(&sb)), RhoMode::Formal);
            let rhs = &reduce(&x, RhoMode::Formal).scale(&sa) + &reduce(&y, RhoMode::Formal).scale(&sb);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
