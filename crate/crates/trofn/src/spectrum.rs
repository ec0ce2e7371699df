//! Enumeration of evaluation orders for revised-sum chains.
//!
//! The revised sum is total and commutative but neither associative nor
//! invariant under reordering of its operands, so the value of a chain
//! `x₁ ⊞ x₂ ⊞ … ⊞ xₙ` is not well defined until an evaluation order is
//! fixed. This module makes that dependence measurable: it enumerates
//! association trees (all full parenthesizations of a fixed operand order),
//! operand permutations (each evaluated as a left fold), or both, and
//! aggregates the outcomes into a [`Spectrum`] that records every distinct
//! value with its multiplicity and the exact evaluations that produced it.
//!
//! Enumeration is combinatorial: `n` operands admit `Catalan(n-1)`
//! parenthesizations and `n!` orderings. A [`SpectrumLimits`] value bounds
//! the operand count for all spectra and the total evaluation count for the
//! combined one.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::ofn::TrOFN;

/// Why a spectrum request was refused or an evaluation failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("no operands given")]
    EmptyOperands,
    #[error("{operands} operands exceed the enumeration cap of {cap}")]
    CapExceeded { operands: usize, cap: usize },
    #[error("{required} evaluations would exceed the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("tree with {leaves} leaves applied to {operands} operands")]
    ArityMismatch { leaves: usize, operands: usize },
    #[error("leaf index {index} out of range for {operands} operands")]
    LeafOutOfRange { index: usize, operands: usize },
}

/// Bounds on spectrum enumeration.
///
/// `cap` limits the operand count of every spectrum; `budget` additionally
/// limits the total number of evaluations of [`full_spectrum`], whose
/// `n! * Catalan(n-1)` growth outruns the cap alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumLimits {
    pub cap: usize,
    pub budget: u64,
}

impl Default for SpectrumLimits {
    fn default() -> Self {
        SpectrumLimits {
            cap: 8,
            budget: 1_000_000,
        }
    }
}

fn checked_catalan(n: usize) -> Option<u128> {
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut total: u128 = 0;
        for j in 0..i {
            total = total.checked_add(table[j].checked_mul(table[i - 1 - j])?)?;
        }
        table[i] = total;
    }
    Some(table[n])
}

/// The `n`-th Catalan number.
///
/// # Panics
///
/// Panics if the value overflows `u128`.
pub fn catalan(n: usize) -> u128 {
    checked_catalan(n).expect("Catalan number overflows u128")
}

fn saturating_factorial(n: usize) -> u128 {
    (2..=n as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX)
}

/// A full binary tree whose leaves are operand positions `0..n`, read left
/// to right. Each tree is one way to parenthesize a sum chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssocTree {
    Leaf(usize),
    Node(Box<AssocTree>, Box<AssocTree>),
}

impl AssocTree {
    pub fn node(left: AssocTree, right: AssocTree) -> AssocTree {
        AssocTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            AssocTree::Leaf(_) => 1,
            AssocTree::Node(left, right) => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Renders the tree as a sum expression, e.g. `"(0+1)+(2+3)"`.
    pub fn expression(&self) -> String {
        fn write_child(tree: &AssocTree, out: &mut String) {
            match tree {
                AssocTree::Leaf(_) => write_sum(tree, out),
                AssocTree::Node(..) => {
                    out.push('(');
                    write_sum(tree, out);
                    out.push(')');
                }
            }
        }

        fn write_sum(tree: &AssocTree, out: &mut String) {
            match tree {
                AssocTree::Leaf(index) => out.push_str(&index.to_string()),
                AssocTree::Node(left, right) => {
                    write_child(left, out);
                    out.push('+');
                    write_child(right, out);
                }
            }
        }

        let mut out = String::new();
        write_sum(self, &mut out);
        out
    }

    /// Evaluates the parenthesization over `operands`, combining with the
    /// revised sum. Leaf `i` takes `operands[i]`.
    pub fn evaluate(&self, operands: &[TrOFN]) -> Result<TrOFN, SpectrumError> {
        let leaves = self.leaf_count();
        if leaves != operands.len() {
            return Err(SpectrumError::ArityMismatch {
                leaves,
                operands: operands.len(),
            });
        }
        self.evaluate_unchecked(operands)
    }

    fn evaluate_unchecked(&self, operands: &[TrOFN]) -> Result<TrOFN, SpectrumError> {
        match self {
            AssocTree::Leaf(index) => {
                operands
                    .get(*index)
                    .cloned()
                    .ok_or(SpectrumError::LeafOutOfRange {
                        index: *index,
                        operands: operands.len(),
                    })
            }
            AssocTree::Node(left, right) => {
                let left = left.evaluate_unchecked(operands)?;
                let right = right.evaluate_unchecked(operands)?;
                Ok(left.revised_sum(&right))
            }
        }
    }
}

impl fmt::Display for AssocTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.expression())
    }
}

/// All association trees over `n` leaves, in canonical order: by the
/// position of the outermost split, then recursively within each side.
/// There are `Catalan(n-1)` of them.
pub fn enumerate_association_trees(
    n: usize,
    limits: &SpectrumLimits,
) -> Result<Vec<AssocTree>, SpectrumError> {
    if n == 0 {
        return Err(SpectrumError::EmptyOperands);
    }
    if n > limits.cap {
        return Err(SpectrumError::CapExceeded {
            operands: n,
            cap: limits.cap,
        });
    }

    fn build(offset: usize, count: usize) -> Vec<AssocTree> {
        if count == 1 {
            return vec![AssocTree::Leaf(offset)];
        }
        let mut trees = Vec::new();
        for split in 1..count {
            for left in build(offset, split) {
                for right in build(offset + split, count - split) {
                    trees.push(AssocTree::node(left.clone(), right));
                }
            }
        }
        trees
    }

    Ok(build(0, n))
}

/// How the operands were arranged for one evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Association {
    /// `((x₁ ⊞ x₂) ⊞ x₃) ⊞ …` over the permuted sequence.
    LeftFold,
    /// A specific parenthesization; `index` is its position in the
    /// canonical order of [`enumerate_association_trees`].
    Tree { index: usize, tree: AssocTree },
}

impl fmt::Display for Association {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Association::LeftFold => f.write_str("left-fold"),
            Association::Tree { tree, .. } => f.write_str(&tree.expression()),
        }
    }
}

/// One complete evaluation: which permutation of the operands was used and
/// how the permuted sequence was parenthesized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationDescriptor {
    pub permutation: Vec<usize>,
    pub association: Association,
}

/// A distinct chain value together with every evaluation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: TrOFN,
    pub multiplicity: u64,
    pub witnesses: Vec<EvaluationDescriptor>,
}

/// The aggregated outcomes of an enumeration.
///
/// Entries are sorted by value (lexicographically on the quadruple) and each
/// entry's witnesses appear in enumeration order, so equal inputs always
/// produce identical spectra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub entries: Vec<SpectrumEntry>,
    pub total: u64,
}

impl Spectrum {
    pub fn values(&self) -> impl Iterator<Item = &TrOFN> {
        self.entries.iter().map(|entry| &entry.value)
    }

    fn from_evaluations<I>(evaluations: I) -> Spectrum
    where
        I: IntoIterator<Item = (TrOFN, EvaluationDescriptor)>,
    {
        let mut grouped: BTreeMap<TrOFN, Vec<EvaluationDescriptor>> = BTreeMap::new();
        let mut total = 0u64;
        for (value, descriptor) in evaluations {
            grouped.entry(value).or_default().push(descriptor);
            total += 1;
        }
        let entries = grouped
            .into_iter()
            .map(|(value, witnesses)| SpectrumEntry {
                value,
                multiplicity: witnesses.len() as u64,
                witnesses,
            })
            .collect();
        Spectrum { entries, total }
    }
}

/// `((x₁ ⊞ x₂) ⊞ x₃) ⊞ …` in the order given.
pub fn left_fold_sum(operands: &[TrOFN]) -> Result<TrOFN, SpectrumError> {
    let (first, rest) = operands.split_first().ok_or(SpectrumError::EmptyOperands)?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, next| acc.revised_sum(next)))
}

fn check_arity(operands: &[TrOFN], limits: &SpectrumLimits) -> Result<usize, SpectrumError> {
    if operands.is_empty() {
        return Err(SpectrumError::EmptyOperands);
    }
    if operands.len() > limits.cap {
        return Err(SpectrumError::CapExceeded {
            operands: operands.len(),
            cap: limits.cap,
        });
    }
    Ok(operands.len())
}

/// Evaluates every parenthesization of the operands in their given order.
pub fn association_spectrum(
    operands: &[TrOFN],
    limits: &SpectrumLimits,
) -> Result<Spectrum, SpectrumError> {
    let n = check_arity(operands, limits)?;
    let identity: Vec<usize> = (0..n).collect();
    let mut evaluations = Vec::new();
    for (index, tree) in enumerate_association_trees(n, limits)?.into_iter().enumerate() {
        let value = tree.evaluate(operands)?;
        evaluations.push((
            value,
            EvaluationDescriptor {
                permutation: identity.clone(),
                association: Association::Tree { index, tree },
            },
        ));
    }
    Ok(Spectrum::from_evaluations(evaluations))
}

/// Left-folds every permutation of the operands.
pub fn permutation_spectrum(
    operands: &[TrOFN],
    limits: &SpectrumLimits,
) -> Result<Spectrum, SpectrumError> {
    let n = check_arity(operands, limits)?;
    let mut evaluations = Vec::new();
    for permutation in (0..n).permutations(n) {
        let arranged: Vec<TrOFN> = permutation.iter().map(|&i| operands[i].clone()).collect();
        let value = left_fold_sum(&arranged)?;
        evaluations.push((
            value,
            EvaluationDescriptor {
                permutation,
                association: Association::LeftFold,
            },
        ));
    }
    Ok(Spectrum::from_evaluations(evaluations))
}

/// Evaluates every parenthesization of every permutation of the operands.
///
/// Requires `n! * Catalan(n-1)` evaluations, so this is the only spectrum
/// checked against `limits.budget` in addition to the operand cap.
pub fn full_spectrum(
    operands: &[TrOFN],
    limits: &SpectrumLimits,
) -> Result<Spectrum, SpectrumError> {
    let n = check_arity(operands, limits)?;
    let required = saturating_factorial(n)
        .saturating_mul(checked_catalan(n - 1).unwrap_or(u128::MAX));
    if required > u128::from(limits.budget) {
        return Err(SpectrumError::BudgetExceeded {
            required,
            budget: limits.budget,
        });
    }

    let trees = enumerate_association_trees(n, limits)?;
    let mut evaluations = Vec::new();
    for permutation in (0..n).permutations(n) {
        let arranged: Vec<TrOFN> = permutation.iter().map(|&i| operands[i].clone()).collect();
        for (index, tree) in trees.iter().enumerate() {
            let value = tree.evaluate(&arranged)?;
            evaluations.push((
                value,
                EvaluationDescriptor {
                    permutation: permutation.clone(),
                    association: Association::Tree {
                        index,
                        tree: tree.clone(),
                    },
                },
            ));
        }
    }
    Ok(Spectrum::from_evaluations(evaluations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactNumber;

    fn n(v: i64) -> ExactNumber {
        ExactNumber::from_int(v)
    }

    fn tr(a: i64, b: i64, c: i64, d: i64) -> TrOFN {
        TrOFN::new(n(a), n(b), n(c), n(d)).unwrap()
    }

    fn crisp(v: i64) -> TrOFN {
        TrOFN::crisp(n(v))
    }

    #[test]
    fn catalan_numbers_match_the_table() {
        let expected = [1u128, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(catalan(i), *want, "catalan({i})");
        }
        assert_eq!(catalan(3), 5);
    }

    #[test]
    fn trees_are_enumerated_in_canonical_order() {
        let limits = SpectrumLimits::default();
        let expressions: Vec<String> = enumerate_association_trees(4, &limits)
            .unwrap()
            .iter()
            .map(AssocTree::expression)
            .collect();
        assert_eq!(
            expressions,
            [
                "0+(1+(2+3))",
                "0+((1+2)+3)",
                "(0+1)+(2+3)",
                "(0+(1+2))+3",
                "((0+1)+2)+3",
            ]
        );

        let pairs: Vec<String> = enumerate_association_trees(3, &limits)
            .unwrap()
            .iter()
            .map(AssocTree::expression)
            .collect();
        assert_eq!(pairs, ["0+(1+2)", "(0+1)+2"]);

        let single: Vec<String> = enumerate_association_trees(1, &limits)
            .unwrap()
            .iter()
            .map(AssocTree::expression)
            .collect();
        assert_eq!(single, ["0"]);
    }

    #[test]
    fn tree_counts_follow_catalan_numbers() {
        let limits = SpectrumLimits::default();
        for n in 1..=8usize {
            let trees = enumerate_association_trees(n, &limits).unwrap();
            assert_eq!(trees.len() as u128, catalan(n - 1), "n = {n}");
            for tree in &trees {
                assert_eq!(tree.leaf_count(), n);
            }
        }
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let limits = SpectrumLimits::default();
        assert_eq!(
            enumerate_association_trees(9, &limits),
            Err(SpectrumError::CapExceeded {
                operands: 9,
                cap: 8
            })
        );
        assert_eq!(
            enumerate_association_trees(0, &limits),
            Err(SpectrumError::EmptyOperands)
        );
    }

    #[test]
    fn evaluate_checks_arity_and_leaf_indices() {
        let limits = SpectrumLimits::default();
        let tree = &enumerate_association_trees(3, &limits).unwrap()[0];
        assert_eq!(
            tree.evaluate(&[crisp(1), crisp(2)]),
            Err(SpectrumError::ArityMismatch {
                leaves: 3,
                operands: 2
            })
        );

        let skewed = AssocTree::node(AssocTree::Leaf(0), AssocTree::Leaf(7));
        assert_eq!(
            skewed.evaluate(&[crisp(1), crisp(2)]),
            Err(SpectrumError::LeafOutOfRange {
                index: 7,
                operands: 2
            })
        );
    }

    #[test]
    fn left_fold_matches_the_left_comb_tree() {
        let operands = [tr(10, 40, 40, 70), tr(110, 100, 100, 60), tr(50, 65, 65, 105)];
        let limits = SpectrumLimits::default();
        let trees = enumerate_association_trees(3, &limits).unwrap();
        let left_comb = trees.last().unwrap();
        assert_eq!(left_comb.expression(), "(0+1)+2");
        assert_eq!(
            left_fold_sum(&operands).unwrap(),
            left_comb.evaluate(&operands).unwrap()
        );
    }

    #[test]
    fn left_fold_requires_operands() {
        assert_eq!(left_fold_sum(&[]), Err(SpectrumError::EmptyOperands));
        assert_eq!(left_fold_sum(&[tr(1, 2, 3, 4)]).unwrap(), tr(1, 2, 3, 4));
    }

    #[test]
    fn permutations_are_enumerated_in_lexicographic_order() {
        let spectrum =
            permutation_spectrum(&[crisp(1), crisp(2), crisp(3)], &SpectrumLimits::default())
                .unwrap();
        assert_eq!(spectrum.entries.len(), 1);
        assert_eq!(spectrum.total, 6);
        let entry = &spectrum.entries[0];
        assert_eq!(entry.value, crisp(6));
        assert_eq!(entry.multiplicity, 6);
        let permutations: Vec<&Vec<usize>> = entry
            .witnesses
            .iter()
            .map(|witness| &witness.permutation)
            .collect();
        assert_eq!(
            permutations,
            [
                &vec![0, 1, 2],
                &vec![0, 2, 1],
                &vec![1, 0, 2],
                &vec![1, 2, 0],
                &vec![2, 0, 1],
                &vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn spectra_of_a_single_operand_are_trivial() {
        let limits = SpectrumLimits::default();
        let operands = [tr(5, 4, 4, 2)];
        for spectrum in [
            association_spectrum(&operands, &limits).unwrap(),
            permutation_spectrum(&operands, &limits).unwrap(),
            full_spectrum(&operands, &limits).unwrap(),
        ] {
            assert_eq!(spectrum.total, 1);
            assert_eq!(spectrum.entries.len(), 1);
            assert_eq!(spectrum.entries[0].value, tr(5, 4, 4, 2));
        }
    }

    #[test]
    fn uniformly_oriented_operands_collapse_to_a_singleton() {
        let limits = SpectrumLimits::default();
        let operands = [tr(1, 3, 7, 8), tr(0, 2, 2, 5), tr(2, 4, 4, 9), crisp(1)];
        let expected = tr(4, 10, 14, 23);
        for spectrum in [
            association_spectrum(&operands, &limits).unwrap(),
            permutation_spectrum(&operands, &limits).unwrap(),
            full_spectrum(&operands, &limits).unwrap(),
        ] {
            assert_eq!(spectrum.entries.len(), 1);
            assert_eq!(spectrum.entries[0].value, expected);
        }
    }

    #[test]
    fn spectra_are_deterministic() {
        let limits = SpectrumLimits::default();
        let operands = [tr(1, 3, 7, 8), tr(5, 4, 4, 2), tr(0, 0, 1, 1)];
        let first = full_spectrum(&operands, &limits).unwrap();
        let second = full_spectrum(&operands, &limits).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn witnesses_are_ordered_by_permutation_then_tree() {
        let limits = SpectrumLimits::default();
        let operands = [tr(1, 3, 7, 8), tr(5, 4, 4, 2), tr(0, 0, 1, 1)];
        let spectrum = full_spectrum(&operands, &limits).unwrap();
        assert_eq!(spectrum.total, 12);
        for entry in &spectrum.entries {
            let keys: Vec<(Vec<usize>, usize)> = entry
                .witnesses
                .iter()
                .map(|witness| {
                    let index = match &witness.association {
                        Association::Tree { index, .. } => *index,
                        Association::LeftFold => unreachable!("full spectrum uses trees"),
                    };
                    (witness.permutation.clone(), index)
                })
                .collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn entries_are_sorted_by_value() {
        let limits = SpectrumLimits::default();
        let operands = [tr(1, 3, 7, 8), tr(5, 4, 4, 2), tr(0, 0, 1, 1)];
        let spectrum = full_spectrum(&operands, &limits).unwrap();
        let values: Vec<&TrOFN> = spectrum.values().collect();
        let mut sorted = values.clone();
        sorted.sort();
        assert_eq!(values, sorted);
        let total: u64 = spectrum.entries.iter().map(|e| e.multiplicity).sum();
        assert_eq!(total, spectrum.total);
    }

    #[test]
    fn full_spectrum_respects_the_budget() {
        let operands: Vec<TrOFN> = (1..=8).map(crisp).collect();
        let result = full_spectrum(&operands, &SpectrumLimits::default());
        assert_eq!(
            result,
            Err(SpectrumError::BudgetExceeded {
                required: 40320 * 429,
                budget: 1_000_000
            })
        );

        let raised = SpectrumLimits {
            cap: 8,
            budget: 20_000_000,
        };
        let spectrum = full_spectrum(&operands[..3], &raised).unwrap();
        assert_eq!(spectrum.total, 12);
    }

    #[test]
    fn association_labels_render_as_expressions() {
        let limits = SpectrumLimits::default();
        let operands = [tr(1, 3, 7, 8), tr(5, 4, 4, 2)];
        let spectrum = association_spectrum(&operands, &limits).unwrap();
        assert_eq!(spectrum.entries[0].witnesses[0].association.to_string(), "0+1");
        assert_eq!(Association::LeftFold.to_string(), "left-fold");
    }
}
