//! Characteristic numbers of a [`Variety`]: total Chern class of the stable
//! tangent bundle, Newton power sums of the Chern roots, Milnor numbers,
//! general Chern numbers, the Todd genus, and the blow-up correction on the
//! level of Milnor numbers.

use crate::error::{Error, Result};
use crate::ring::RingClass;
use crate::scalar::Scalar;
use crate::variety::{TangentFactor, Variety};

/// A partition indexing a Chern number: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// Total Chern class of the stable tangent bundle: the product over tangent
/// factors of (1 + c1) for a line, (1 - c1) for a reversed line, and the
/// twisted total Chern class for a block, where
/// c(E (x) L) = sum_j c_j(E) (1 + c1(L))^(rank - j).
pub fn total_chern(v: &Variety) -> RingClass {
    let ring = v.ring();
    let one = ring.one();
    let mut acc = ring.one();
    for f in v.tangent() {
        let factor = match f {
            TangentFactor::LineClass(c) => one.add(c).expect("same ring"),
            TangentFactor::NegLineClass(c) => one.sub(c).expect("same ring"),
            TangentFactor::TwistedBlock { chern, rank, twist } => {
                let shifted = one.add(twist).expect("same ring");
                let mut sum = ring.zero();
                for j in 0..=*rank {
                    let cj = chern.weight_component(j);
                    if cj.is_zero() {
                        continue;
                    }
                    sum = sum
                        .add(&cj.mul(&shifted.pow(rank - j)).expect("same ring"))
                        .expect("same ring");
                }
                sum
            }
        };
        acc = acc.mul(&factor).expect("same ring");
    }
    acc
}

/// k-th Newton power sum of the Chern roots, from the graded components of
/// the total Chern class:
/// p_k = c_1 p_(k-1) - c_2 p_(k-2) + ... + (-1)^(k-1) k c_k.
pub fn power_sum(v: &Variety, k: u32) -> Result<RingClass> {
    if k == 0 {
        return Err(Error::InvalidArgument("power sum index must be positive".into()));
    }
    let c = total_chern(v);
    let cs: Vec<RingClass> = (0..=k).map(|r| c.weight_component(r)).collect();
    let mut ps: Vec<RingClass> = Vec::with_capacity(k as usize + 1);
    ps.push(v.ring().zero()); // unused p_0 slot
    for m in 1..=k as usize {
        let mut acc = v.ring().zero();
        for r in 1..m {
            let term = cs[r].mul(&ps[m - r])?;
            acc = if r % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        let tail = cs[m].scalar_mul(&Scalar::from_int(m as i64));
        acc = if m % 2 == 1 { acc.add(&tail)? } else { acc.sub(&tail)? };
        ps.push(acc);
    }
    Ok(ps.pop().expect("nonempty"))
}

/// Milnor number: the top power sum paired with the fundamental class.
/// A point has Milnor number 1.
pub fn milnor_number(v: &Variety) -> Scalar {
    if v.dim() == 0 {
        return v.ring().one().integrate();
    }
    power_sum(v, v.dim())
        .expect("positive dimension")
        .integrate()
}

/// Chern number for a partition of the dimension.
pub fn chern_number(v: &Variety, omega: &Partition) -> Result<Scalar> {
    if omega.total() != v.dim() {
        return Err(Error::InvalidArgument(format!(
            "partition of {} does not match dimension {}",
            omega.total(),
            v.dim()
        )));
    }
    let c = total_chern(v);
    let mut acc = v.ring().one();
    for &part in omega.parts() {
        acc = acc.mul(&c.weight_component(part))?;
    }
    Ok(acc.integrate())
}

/// Coefficients of log(x / (1 - e^(-x))) up to and including x^order.
/// Exponentiating sum_k L_k p_k gives the multiplicative Todd class.
pub fn todd_log_coefficients(order: u32) -> Vec<Scalar> {
    series_log(&todd_series_coefficients(order))
}

/// Coefficients of x / (1 - e^(-x)) itself, entry k being the classical
/// B_k^+ / k! (1, 1/2, 1/12, 0, -1/720, ...).
pub fn todd_series_coefficients(order: u32) -> Vec<Scalar> {
    // (1 - e^(-x)) / x = sum_k (-1)^k x^k / (k+1)!
    let n = order as usize;
    let mut denom: Vec<Scalar> = Vec::with_capacity(n + 1);
    let mut fact = Scalar::one();
    for k in 0..=n {
        fact *= &Scalar::from_int(k as i64 + 1);
        let c = fact.recip().expect("nonzero");
        denom.push(if k % 2 == 0 { c } else { -c });
    }
    series_inverse(&denom)
}

/// Bernoulli numbers with the B_1 = +1/2 convention, via the standard
/// recurrence sum_j binom(n+1, j) B_j = 0. Used as an independent check of
/// the series above: coefficient k of x/(1 - e^(-x)) equals B_k^+ / k!.
pub fn bernoulli_plus(order: u32) -> Vec<Scalar> {
    let n = order as usize;
    let mut b: Vec<Scalar> = Vec::with_capacity(n + 1);
    b.push(Scalar::one());
    for m in 1..=n {
        // sum_{j=0}^{m} binom(m+1, j) B_j = 0 with B_1 = -1/2.
        let mut sum = Scalar::zero();
        let mut binom = Scalar::one(); // binom(m+1, 0)
        for (j, bj) in b.iter().enumerate().take(m) {
            sum += &(&binom * bj);
            binom = binom
                * Scalar::ratio((m as i64 + 1) - j as i64, j as i64 + 1);
        }
        let bm = -(sum
            * Scalar::from_int(m as i64 + 1)
                .recip()
                .expect("nonzero"));
        b.push(bm);
    }
    // Flip to the plus convention: B_n^+ = (-1)^n B_n.
    for (k, bk) in b.iter_mut().enumerate() {
        if k % 2 == 1 {
            *bk = -bk.clone();
        }
    }
    b
}

/// Todd genus: integrate exp(sum_k L_k p_k) over the variety, in rational
/// coefficient mode. Thearithmetic is exact; for a standard-structure tower
/// the result collapses to the integer 1.
pub fn todd_genus(v: &Variety) -> Scalar {
    let vr = v.with_rational_coefficients();
    let n = vr.dim();
    if n == 0 {
        return vr.ring().one().integrate();
    }
    let l = todd_log_coefficients(n);
    let mut acc = vr.ring().zero();
    for k in 1..=n {
        let pk = power_sum(&vr, k).expect("positive index");
        acc = acc
            .add(&pk.scalar_mul(&l[k as usize]))
            .expect("same ring");
    }
    acc.exp_nilpotent()
        .expect("rational mode, zero constant term")
        .integrate()
}

/// Milnor number of the blow-up of X along the center whose correction term
/// is Y: s_n(X) - s_n(Y).
pub fn blowup_milnor(x: &Variety, y: &Variety) -> Result<Scalar> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(milnor_number(x) - milnor_number(y))
}

/// Closed form for the Milnor number of a bounded flag bundle with line
/// list (x_1, ..., x_(k+1)) over a base of dimension n: zero when n + k is
/// even, otherwise twice the pairing of
/// (1 + x_(k+1))^(n+k-1) (1 + x_k)^(-1) ... (1 + x_1)^(-1)
/// with the base's fundamental class.
pub fn closed_form_bf_milnor(base: &Variety, line_c1s: &[RingClass]) -> Result<Scalar> {
    if line_c1s.len() < 2 {
        return Err(Error::InvalidArgument(
            "closed form needs at least two line bundles".into(),
        ));
    }
    for c in line_c1s {
        if !base.ring().same_ring(c.ring()) {
            return Err(Error::OwnershipMismatch);
        }
    }
    let n = base.dim();
    let k = line_c1s.len() as u32 - 1;
    if (n + k) % 2 == 0 {
        return Ok(Scalar::zero());
    }
    let ring = base.ring();
    let one = ring.one();
    let last = line_c1s.last().expect("nonempty");
    let mut acc = one.add(last)?.pow(n + k - 1);
    for x in &line_c1s[..line_c1s.len() - 1] {
        acc = acc.mul(&one.add(x)?.invert_unit()?)?;
    }
    Ok(Scalar::from_int(2) * acc.integrate())
}

/// Power-series inverse of a series with unit constant term.
fn series_inverse(a: &[Scalar]) -> Vec<Scalar> {
    let a0_inv = a[0].recip().expect("unit constant term");
    let mut g: Vec<Scalar> = Vec::with_capacity(a.len());
    g.push(a0_inv.clone());
    for n in 1..a.len() {
        let mut sum = Scalar::zero();
        for i in 1..=n {
            sum += &(&a[i] * &g[n - i]);
        }
        g.push(-(sum * a0_inv.clone()));
    }
    g
}

/// Power-series log of a series with constant term 1, via (log g)' = g'/g.
fn series_log(g: &[Scalar]) -> Vec<Scalar> {
    assert!(g[0].is_one(), "log needs unit constant term");
    let g_inv = series_inverse(g);
    let mut l: Vec<Scalar> = vec![Scalar::zero(); g.len()];
    for k in 1..g.len() {
        // coefficient of x^(k-1) in g' * g^(-1), divided by k
        let mut sum = Scalar::zero();
        for i in 1..=k {
            sum += &(&(&Scalar::from_int(i as i64) * &g[i]) * &g_inv[k - i]);
        }
        l[k] = sum * Scalar::from_int(k as i64).recip().expect("nonzero");
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::Variety;
    use num_bigint::BigInt;

    fn milnor_int(v: &Variety) -> BigInt {
        milnor_number(v).to_integer().expect("integer milnor number")
    }

    #[test]
    fn total_chern_cp_n() {
        for n in 1..=4u32 {
            let v = Variety::projective_space(n);
            let y = v.ring().generator(0);
            let expected = v.ring().one().add(&y).unwrap().pow(n + 1);
            assert_eq!(total_chern(&v), expected);
        }
    }

    #[test]
    fn total_chern_bf2() {
        // Two factors per stage: (1+t1)^2 (1+t2-t1)(1+t2).
        let v = Variety::bounded_flag(2);
        let r = v.ring();
        let t1 = r.generator(0);
        let t2 = r.generator(1);
        let one = r.one();
        let expected = one
            .add(&t1)
            .unwrap()
            .pow(2)
            .mul(&one.add(&t2).unwrap().sub(&t1).unwrap())
            .unwrap()
            .mul(&one.add(&t2).unwrap())
            .unwrap();
        assert_eq!(total_chern(&v), expected);
    }

    #[test]
    fn y_chern_has_reversed_line() {
        // The (1 - y) factor from the reversed tautological line.
        let v = Variety::y_variety(2, 2).unwrap();
        assert!(v
            .tangent()
            .iter()
            .any(|f| matches!(f, TangentFactor::NegLineClass(_))));
    }

    #[test]
    fn power_sum_cp2() {
        let v = Variety::projective_space(2);
        let y = v.ring().generator(0);
        // p_2 = c_1^2 - 2 c_2 = 9y^2 - 6y^2 = 3y^2.
        assert_eq!(
            power_sum(&v, 2).unwrap(),
            y.pow(2).scalar_mul(&Scalar::from_int(3))
        );
        // p_1 = c_1.
        assert_eq!(
            power_sum(&v, 1).unwrap(),
            total_chern(&v).weight_component(1)
        );
    }

    #[test]
    fn power_sum_matches_roots_for_split_tangent() {
        // For an all-lines tangent list, Newton's recursion must equal the
        // literal sum of k-th powers of the roots.
        for v in [
            Variety::bounded_flag(3),
            Variety::x_variety(2, 2).unwrap(),
            Variety::br_variety(2, 3).unwrap(),
        ] {
            for k in 1..=v.dim() {
                let direct = v.tangent().iter().fold(v.ring().zero(), |acc, f| {
                    let root = match f {
                        TangentFactor::LineClass(c) => c.clone(),
                        TangentFactor::NegLineClass(c) => c.neg(),
                        TangentFactor::TwistedBlock { .. } => {
                            panic!("split tangent expected")
                        }
                    };
                    acc.add(&root.pow(k)).unwrap()
                });
                assert_eq!(
                    power_sum(&v, k).unwrap(),
                    direct,
                    "{} at k={k}",
                    v.name()
                );
            }
        }
    }

    #[test]
    fn milnor_numbers_of_basic_families() {
        assert_eq!(milnor_int(&Variety::bounded_flag(3)), BigInt::from(2));
        assert_eq!(milnor_int(&Variety::bounded_flag(2)), BigInt::from(0));
        assert_eq!(milnor_int(&Variety::bounded_flag(1)), BigInt::from(2));
        assert_eq!(milnor_int(&Variety::projective_space(2)), BigInt::from(3));
        assert_eq!(milnor_int(&Variety::projective_space(4)), BigInt::from(5));
        assert_eq!(milnor_int(&Variety::x_variety(2, 3).unwrap()), BigInt::from(20));
        assert_eq!(milnor_int(&Variety::x_variety(2, 2).unwrap()), BigInt::from(0));
    }

    #[test]
    fn y_milnor_small_cases() {
        // Hockey-stick sums: sum_{k=j}^{i+j} binom(k, j).
        assert_eq!(milnor_int(&Variety::y_variety(2, 2).unwrap()), BigInt::from(10));
        assert_eq!(milnor_int(&Variety::y_variety(2, 3).unwrap()), BigInt::from(15));
        // i = 1 follows the j+1+(-1)^(j+1) rule instead.
        assert_eq!(milnor_int(&Variety::y_variety(1, 2).unwrap()), BigInt::from(2));
        assert_eq!(milnor_int(&Variety::y_variety(1, 1).unwrap()), BigInt::from(3));
        assert_eq!(milnor_int(&Variety::y_variety(1, 3).unwrap()), BigInt::from(5));
    }

    #[test]
    fn chern_numbers_cp2() {
        let v = Variety::projective_space(2);
        assert_eq!(
            chern_number(&v, &Partition::new(vec![1, 1]).unwrap()).unwrap(),
            Scalar::from_int(9)
        );
        assert_eq!(
            chern_number(&v, &Partition::new(vec![2]).unwrap()).unwrap(),
            Scalar::from_int(3)
        );
        assert!(chern_number(&v, &Partition::new(vec![1]).unwrap()).is_err());

        let c1 = Variety::projective_space(1);
        assert_eq!(
            chern_number(&c1, &Partition::new(vec![1]).unwrap()).unwrap(),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn chern_numbers_cp3() {
        // Classical values from (1+y)^4: c1^3 = 64, c1 c2 = 24, c3 = 4.
        let v = Variety::projective_space(3);
        for (parts, expected) in [
            (vec![1, 1, 1], 64),
            (vec![2, 1], 24),
            (vec![3], 4),
        ] {
            assert_eq!(
                chern_number(&v, &Partition::new(parts).unwrap()).unwrap(),
                Scalar::from_int(expected)
            );
        }
    }

    #[test]
    fn products_have_vanishing_milnor_number() {
        // s_n vanishes on a product of positive-dimensional factors: each
        // factor's top power sum dies by weight.
        for (a, b) in [
            (Variety::projective_space(1), Variety::projective_space(1)),
            (Variety::bounded_flag(1), Variety::bounded_flag(2)),
            (Variety::projective_space(2), Variety::bounded_flag(3)),
        ] {
            let p = Variety::product(&a, &b).unwrap();
            assert_eq!(milnor_number(&p), Scalar::zero(), "{}", p.name());
        }
    }

    #[test]
    fn br_matches_h_family() {
        for i in 1..=4u32 {
            for j in i..=4u32 {
                assert_eq!(
                    milnor_number(&Variety::br_variety(i, j).unwrap()),
                    milnor_number(&Variety::h_variety(i, j).unwrap()),
                    "BR({i},{j}) vs H({i},{j})"
                );
            }
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![3, 0]).is_err());
        assert!(Partition::new(vec![3, 2, 2]).is_ok());
    }

    #[test]
    fn todd_series_against_bernoulli() {
        let g = todd_series_coefficients(10);
        let b = bernoulli_plus(10);
        let mut fact = Scalar::one();
        for k in 0..=10usize {
            if k > 0 {
                fact *= &Scalar::from_int(k as i64);
            }
            let expected = &b[k] * &fact.recip().unwrap();
            assert_eq!(g[k], expected, "series coefficient {k}");
        }
        // The classical values 1/2, 1/12, 0, -1/720 are coefficients of the
        // series itself.
        assert_eq!(g[1], Scalar::ratio(1, 2));
        assert_eq!(g[2], Scalar::ratio(1, 12));
        assert_eq!(g[3], Scalar::zero());
        assert_eq!(g[4], Scalar::ratio(-1, 720));
    }

    #[test]
    fn todd_log_coefficients_values() {
        let l = todd_log_coefficients(6);
        assert_eq!(l[1], Scalar::ratio(1, 2));
        assert_eq!(l[2], Scalar::ratio(-1, 24));
        assert_eq!(l[3], Scalar::zero());
        // Odd coefficients beyond x vanish.
        assert_eq!(l[5], Scalar::zero());
    }

    #[test]
    fn todd_genus_of_toric_towers() {
        for n in 0..=3u32 {
            assert_eq!(
                todd_genus(&Variety::projective_space(n)),
                Scalar::one(),
                "CP^{n}"
            );
        }
        for n in 1..=4u32 {
            assert_eq!(todd_genus(&Variety::bounded_flag(n)), Scalar::one(), "BF_{n}");
        }
        assert_eq!(todd_genus(&Variety::x_variety(2, 3).unwrap()), Scalar::one());
        assert_eq!(todd_genus(&Variety::br_variety(2, 2).unwrap()), Scalar::one());
    }

    #[test]
    fn hypersurface_families() {
        let h = Variety::h_variety(2, 3).unwrap();
        assert_eq!(milnor_int(&h), BigInt::from(-10));
        let br = Variety::br_variety(2, 3).unwrap();
        assert_eq!(milnor_int(&br), milnor_int(&h));
        // The (1,1) hypersurface is a rational curve: s_1 is its Euler
        // characteristic.
        assert_eq!(
            milnor_int(&Variety::h_variety(1, 1).unwrap()),
            BigInt::from(2)
        );
    }

    #[test]
    fn l_family_is_toric() {
        for (i, j) in [(0u32, 1u32), (1, 1), (1, 2), (2, 2)] {
            assert_eq!(
                todd_genus(&Variety::l_variety(i, j).unwrap()),
                Scalar::one(),
                "L({i},{j})"
            );
        }
    }

    #[test]
    fn blowup_difference() {
        let x22 = Variety::x_variety(2, 2).unwrap();
        let y22 = Variety::y_variety(2, 2).unwrap();
        assert_eq!(
            blowup_milnor(&x22, &y22).unwrap(),
            Scalar::from_int(-10)
        );
        let x23 = Variety::x_variety(2, 3).unwrap();
        let y23 = Variety::y_variety(2, 3).unwrap();
        assert_eq!(blowup_milnor(&x23, &y23).unwrap(), Scalar::from_int(5));
        assert_eq!(blowup_milnor(&x22, &x22).unwrap(), Scalar::zero());
        assert!(blowup_milnor(&x22, &y23).is_err());
    }

    #[test]
    fn closed_form_matches_engine() {
        // Trivial lines over a point, odd total dimension.
        let pt = Variety::point();
        let zeros = vec![pt.ring().zero(); 4];
        assert_eq!(
            closed_form_bf_milnor(&pt, &zeros).unwrap(),
            Scalar::from_int(2)
        );
        let v = Variety::bf_bundle(&pt, &zeros).unwrap();
        assert_eq!(milnor_number(&v), Scalar::from_int(2));

        // Even total dimension vanishes.
        let zeros3 = vec![pt.ring().zero(); 3];
        assert_eq!(closed_form_bf_milnor(&pt, &zeros3).unwrap(), Scalar::zero());

        // The X(2,3) line list (one trivial line, the two complement lines,
        // then t_2) reproduces 20.
        let base = Variety::bounded_flag(2);
        let r = base.ring();
        let t1 = r.generator(0);
        let t2 = r.generator(1);
        let lines = vec![
            r.zero(),
            r.zero().sub(&t1).unwrap(),
            t1.sub(&t2).unwrap(),
            t2.clone(),
        ];
        assert_eq!(
            closed_form_bf_milnor(&base, &lines).unwrap(),
            Scalar::from_int(20)
        );
        let v = Variety::bf_bundle(&base, &lines).unwrap();
        assert_eq!(milnor_number(&v), Scalar::from_int(20));
    }
}
