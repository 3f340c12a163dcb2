//! Counting q-orderings: brute-force enumeration, the Q-set iteration formula and the
//! closed form for one relation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Generator, NakayamaAlgebra, QuiverSpec, Vertex};
use crate::error::{Error, Result};
use crate::qh::{
    is_q_ordering_criterion, is_q_ordering_oracle, orderings_with_maximum, q_set_partition,
    weyl_family, TotalOrdering, WeylFamily,
};

/// Largest `n` enumerated without `force`.
pub const DEFAULT_ENUM_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: DEFAULT_ENUM_CAP, force: false }
    }
}

impl Limits {
    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.cap && !self.force {
            Err(Error::TooLarge { n, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Which decider to count with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decider {
    Criterion,
    Oracle,
}

fn decide(a: &NakayamaAlgebra, ord: &TotalOrdering, decider: Decider) -> bool {
    match decider {
        Decider::Criterion => is_q_ordering_criterion(a, ord),
        Decider::Oracle => is_q_ordering_oracle(a, ord),
    }
}

/// Number of q-orderings whose maximum is `x`.
pub fn count_with_maximum(a: &NakayamaAlgebra, x: Vertex, decider: Decider) -> u64 {
    orderings_with_maximum(a.n(), x).filter(|o| decide(a, o, decider)).count() as u64
}

/// `q(A)` by running `decider` over all `n!` orderings. Blocks with a fixed maximum are
/// counted in parallel.
pub fn count_enumeration_with(a: &NakayamaAlgebra, decider: Decider, limits: Limits) -> Result<BigUint> {
    limits.check(a.n())?;
    let total: u64 = (1..=a.n())
        .into_par_iter()
        .map(|x| count_with_maximum(a, x, decider))
        .sum();
    Ok(BigUint::from(total))
}

pub fn count_enumeration(a: &NakayamaAlgebra, limits: Limits) -> Result<BigUint> {
    count_enumeration_with(a, Decider::Criterion, limits)
}

/// All q-orderings, in lexicographic order of their descending lists.
pub fn q_orderings(a: &NakayamaAlgebra, limits: Limits) -> Result<Vec<TotalOrdering>> {
    limits.check(a.n())?;
    let blocks: Vec<Vec<TotalOrdering>> = (1..=a.n())
        .into_par_iter()
        .map(|x| {
            orderings_with_maximum(a.n(), x)
                .filter(|o| is_q_ordering_criterion(a, o))
                .collect()
        })
        .collect();
    Ok(blocks.into_iter().flatten().collect())
}

/// Result of deleting the relations that end or start at a Q-set vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduced {
    Algebra(NakayamaAlgebra),
    /// A cyclic quiver with every relation removed. It is not a finite-dimensional
    /// algebra; the iteration counts it as `n!`.
    FreeLinear { n: usize },
}

impl Reduced {
    pub fn n(&self) -> usize {
        match self {
            Reduced::Algebra(a) => a.n(),
            Reduced::FreeLinear { n } => *n,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        match self {
            Reduced::Algebra(a) => a.generators(),
            Reduced::FreeLinear { .. } => &[],
        }
    }
}

/// The ideal `I_x̂`: unchanged for `x ∈ X⁰`, minus the relation with endpoint `x` for
/// `x ∈ X¹`, minus the relation ending at `x` and the one starting at `x` for `x ∈ X²`.
pub fn ideal_minus(a: &NakayamaAlgebra, x: Vertex) -> Result<Reduced> {
    let part = q_set_partition(a);
    if !part.x.contains(&x) {
        return Err(Error::NotInQSet(x));
    }
    let removed: Vec<Generator> = part
        .hook_gen
        .get(&x)
        .into_iter()
        .chain(part.den_gen.get(&x))
        .copied()
        .collect();
    Ok(match a.without_generators(&removed) {
        Some(b) => Reduced::Algebra(b),
        None => Reduced::FreeLinear { n: a.n() },
    })
}

/// `q` for a principal ideal: `2·n!/ℓ` when `ℓ ≤ n`, `(n-1)!` when `ℓ = n+1`, else 0.
pub fn closed_form_one_generator(quiver: QuiverSpec, g: Generator) -> BigUint {
    let n = quiver.n;
    if g.length <= n {
        let (q, r) = (factorial(n) * 2u32).div_rem(&BigUint::from(g.length));
        assert!(r.is_zero(), "ℓ ≤ n divides n!");
        q
    } else if g.length == n + 1 {
        factorial(n - 1)
    } else {
        BigUint::zero()
    }
}

/// `q(A)` from the Q-set iteration
/// `q(A) = [Σ_{x ∈ X¹ ∪ X²} q(I_x̂)] / (n - |X⁰|)`.
pub fn count_formula(a: &NakayamaAlgebra) -> Result<BigUint> {
    let mut memo = HashMap::new();
    count_formula_memo(a, &mut memo)
}

fn count_formula_memo(a: &NakayamaAlgebra, memo: &mut HashMap<Vec<Generator>, BigUint>) -> Result<BigUint> {
    let n = a.n();
    if a.generators().is_empty() {
        return Ok(factorial(n));
    }
    if let Some(q) = memo.get(a.generators()) {
        return Ok(q.clone());
    }
    let part = q_set_partition(a);
    let q = if part.x.is_empty() {
        BigUint::zero()
    } else if let [g] = a.generators() {
        closed_form_one_generator(a.quiver(), *g)
    } else {
        let mut sum = BigUint::zero();
        for &x in part.x1.iter().chain(&part.x2) {
            sum += match ideal_minus(a, x)? {
                Reduced::Algebra(b) => count_formula_memo(&b, memo)?,
                Reduced::FreeLinear { n } => factorial(n),
            };
        }
        let denominator = BigUint::from(n - part.x0.len());
        let (q, r) = sum.div_rem(&denominator);
        if !r.is_zero() {
            return Err(Error::NonIntegralDivision {
                numerator: sum.to_string(),
                denominator: denominator.to_string(),
            });
        }
        q
    };
    memo.insert(a.generators().to_vec(), q.clone());
    Ok(q)
}

/// `q` of a reduced ideal, counting the free cyclic case as `n!`.
pub fn count_reduced(r: &Reduced) -> Result<BigUint> {
    match r {
        Reduced::Algebra(b) => count_formula(b),
        Reduced::FreeLinear { n } => Ok(factorial(*n)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q_enumeration: BigUint,
    pub q_formula: BigUint,
    pub n_factorial: BigUint,
    pub hereditary: bool,
    /// `3q ≤ 2·n!`. Meaningful only for non-hereditary algebras.
    pub bound_satisfied: bool,
    /// `3q = 2·n!`.
    pub equality_case: bool,
    /// One relation of length 3.
    pub principal_length_three: bool,
}

impl CountReport {
    pub fn counts_agree(&self) -> bool {
        self.q_enumeration == self.q_formula
    }

    /// The bound and its equality case hold as predicted for this algebra.
    pub fn bound_consistent(&self) -> bool {
        if self.hereditary {
            self.q_enumeration == self.n_factorial
        } else {
            self.bound_satisfied && self.equality_case == self.principal_length_three
        }
    }
}

pub fn verify_bound(a: &NakayamaAlgebra, limits: Limits) -> Result<CountReport> {
    let q_enumeration = count_enumeration(a, limits)?;
    let q_formula = count_formula(a)?;
    let n_factorial = factorial(a.n());
    let three_q = &q_enumeration * 3u32;
    let two_nf = &n_factorial * 2u32;
    Ok(CountReport {
        bound_satisfied: three_q <= two_nf,
        equality_case: three_q == two_nf,
        principal_length_three: matches!(a.generators(), [g] if g.length == 3),
        hereditary: a.is_hereditary(),
        q_enumeration,
        q_formula,
        n_factorial,
    })
}

/// q-orderings that induce the same Weyl modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureClass {
    pub family: WeylFamily,
    pub representatives: Vec<TotalOrdering>,
    pub size: usize,
}

/// Groups the q-orderings by their Weyl family, sorted by the lengths vector.
pub fn classify_structures(a: &NakayamaAlgebra, limits: Limits) -> Result<Vec<StructureClass>> {
    let mut classes: BTreeMap<WeylFamily, Vec<TotalOrdering>> = BTreeMap::new();
    for o in q_orderings(a, limits)? {
        classes.entry(weyl_family(a, &o)).or_default().push(o);
    }
    Ok(classes
        .into_iter()
        .map(|(family, representatives)| StructureClass {
            size: representatives.len(),
            family,
            representatives,
        })
        .collect())
}

/// Paths of length ≥ 3 from `h` that are still nonzero in `a`; each one can be added as
/// a new relation.
pub fn addable_generators(a: &NakayamaAlgebra) -> Vec<Generator> {
    a.vertices()
        .flat_map(|h| (3..=a.projective_len(h)).map(move |len| Generator::new(h, len)))
        .collect()
}

/// Whether adding `g` to the relations strictly lowers `q`. Both counts are by
/// enumeration.
pub fn strict_monotonicity_check(a: &NakayamaAlgebra, g: Generator) -> Result<bool> {
    let enlarged = a.with_generator(g)?;
    let limits = Limits::default();
    Ok(count_enumeration(a, limits)? > count_enumeration(&enlarged, limits)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(cyclic: bool, n: usize, list: &[(usize, usize)]) -> NakayamaAlgebra {
        let q = if cyclic { QuiverSpec::cyclic(n) } else { QuiverSpec::linear(n) }.unwrap();
        NakayamaAlgebra::new(q, list.iter().map(|&(h, l)| Generator::new(h, l)).collect()).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn example_a5() -> NakayamaAlgebra {
        alg(false, 5, &[(1, 3), (2, 3)])
    }

    #[test]
    fn enumeration_examples() {
        let l = Limits::default();
        assert_eq!(count_enumeration(&alg(false, 3, &[(1, 3)]), l).unwrap(), big(4));
        assert_eq!(count_enumeration(&alg(true, 3, &[(1, 3)]), l).unwrap(), big(4));
        assert_eq!(count_enumeration(&example_a5(), l).unwrap(), big(40));
        assert_eq!(count_enumeration_with(&example_a5(), Decider::Oracle, l).unwrap(), big(40));
        let listed: Vec<String> = q_orderings(&alg(false, 3, &[(1, 3)]), l)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(listed, vec!["1,2,3", "1,3,2", "3,1,2", "3,2,1"]);
    }

    #[test]
    fn enumeration_cap() {
        let a = NakayamaAlgebra::hereditary(11).unwrap();
        assert_eq!(count_enumeration(&a, Limits::default()), Err(Error::TooLarge { n: 11, cap: 10 }));
        let small = Limits { cap: 3, force: false };
        assert!(count_enumeration(&example_a5(), small).is_err());
        assert!(count_enumeration(&example_a5(), Limits { force: true, ..small }).is_ok());
    }

    #[test]
    fn ideal_minus_examples() {
        let a5 = example_a5();
        match ideal_minus(&a5, 1).unwrap() {
            Reduced::Algebra(b) => assert_eq!(b.generators(), &[Generator::new(2, 3)]),
            other => panic!("{other:?}"),
        }
        assert_eq!(ideal_minus(&a5, 5).unwrap(), Reduced::Algebra(a5.clone()));
        assert_eq!(ideal_minus(&a5, 3), Err(Error::NotInQSet(3)));
        let c = alg(true, 4, &[(1, 3), (3, 3)]);
        assert_eq!(ideal_minus(&c, 1).unwrap(), Reduced::FreeLinear { n: 4 });
    }

    #[test]
    fn formula_examples() {
        assert_eq!(count_formula(&example_a5()).unwrap(), big(40));
        assert_eq!(count_formula(&NakayamaAlgebra::hereditary(4).unwrap()).unwrap(), big(24));
        assert_eq!(count_formula(&alg(true, 3, &[(1, 3)])).unwrap(), big(4));
        assert_eq!(count_formula(&alg(true, 4, &[(1, 3), (3, 3)])).unwrap(), big(12));
    }

    #[test]
    fn closed_form_examples() {
        let g = |h, l| Generator::new(h, l);
        assert_eq!(closed_form_one_generator(QuiverSpec::linear(5).unwrap(), g(1, 3)), big(80));
        assert_eq!(closed_form_one_generator(QuiverSpec::cyclic(3).unwrap(), g(1, 4)), big(2));
        assert_eq!(closed_form_one_generator(QuiverSpec::cyclic(2).unwrap(), g(1, 5)), big(0));
        assert_eq!(
            closed_form_one_generator(QuiverSpec::linear(30).unwrap(), g(1, 3)),
            factorial(30) * 2u32 / 3u32
        );
    }

    #[test]
    fn bound_examples() {
        let r = verify_bound(&alg(false, 4, &[(1, 3)]), Limits::default()).unwrap();
        assert_eq!(r.q_enumeration, big(16));
        assert!(r.equality_case && r.bound_consistent());
        let r = verify_bound(&example_a5(), Limits::default()).unwrap();
        assert_eq!(r.q_enumeration, big(40));
        assert!(r.bound_satisfied && !r.equality_case && r.counts_agree());
        let r = verify_bound(&NakayamaAlgebra::hereditary(4).unwrap(), Limits::default()).unwrap();
        assert!(r.hereditary && r.q_enumeration == big(24) && r.bound_consistent());
    }

    #[test]
    fn structure_classes_of_a3() {
        let classes = classify_structures(&alg(false, 3, &[(1, 3)]), Limits::default()).unwrap();
        let shape: Vec<(Vec<usize>, Vec<String>)> = classes
            .iter()
            .map(|c| (c.family.lengths.clone(), c.representatives.iter().map(|o| o.to_string()).collect()))
            .collect();
        assert_eq!(
            shape,
            vec![
                (vec![1, 1, 1], vec!["3,2,1".to_string()]),
                (vec![2, 1, 1], vec!["1,3,2".to_string(), "3,1,2".to_string()]),
                (vec![2, 2, 1], vec!["1,2,3".to_string()]),
            ]
        );
    }

    #[test]
    fn structure_classes_partition_q_orderings() {
        let h2 = classify_structures(&NakayamaAlgebra::hereditary(2).unwrap(), Limits::default()).unwrap();
        let lengths: Vec<_> = h2.iter().map(|c| c.family.lengths.clone()).collect();
        assert_eq!(lengths, vec![vec![1, 1], vec![2, 1]]);
        let classes = classify_structures(&example_a5(), Limits::default()).unwrap();
        assert!(classes.iter().all(|c| c.size > 0 && c.size == c.representatives.len()));
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 40);
    }

    #[test]
    fn monotonicity_examples() {
        let h4 = NakayamaAlgebra::hereditary(4).unwrap();
        assert!(strict_monotonicity_check(&h4, Generator::new(1, 3)).unwrap());
        let one = alg(false, 5, &[(1, 3)]);
        assert!(strict_monotonicity_check(&one, Generator::new(2, 3)).unwrap());
        assert!(strict_monotonicity_check(&one, Generator::new(3, 3)).unwrap());
        assert_eq!(
            strict_monotonicity_check(&one, Generator::new(1, 4)),
            Err(Error::GeneratorInIdeal { hook: 1, length: 4 })
        );
    }
}
