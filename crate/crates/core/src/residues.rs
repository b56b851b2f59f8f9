//! Binomial-coefficient residues modulo prime powers: Lucas' theorem,
//! Kummer carry counting, generalized factorials, Granville's theorem, and
//! exact verifiers for the congruence lemmas behind the prime-power case of
//! the generator criterion.
//!
//! Every verifier evaluates both sides independently of any proof, with
//! big-integer arithmetic as the oracle, so a wrong statement shows up as a
//! failed record rather than a crash. Fractional congruences are read via
//! modular inverses of denominators coprime to p.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Base-p digit expansion, little-endian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseDigits {
    pub base: u64,
    pub digits: Vec<u64>,
}

impl BaseDigits {
    pub fn of(mut n: u64, base: u64) -> BaseDigits {
        assert!(base >= 2);
        let mut digits = Vec::new();
        while n > 0 {
            digits.push(n % base);
            n /= base;
        }
        if digits.is_empty() {
            digits.push(0);
        }
        BaseDigits { base, digits }
    }

    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.base + d)
    }
}

/// A residue in [0, p^q) with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// Trial-division primality, adequate at this scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// Exact binomial coefficient via the multiplicative recurrence.
/// Returns 0 when m > n.
pub fn binom_exact(n: u64, m: u64) -> BigInt {
    if m > n {
        return BigInt::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigInt::one();
    for k in 0..m {
        acc = acc * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    acc
}

/// binom(n, m) mod p by Lucas' theorem: the product of the digitwise
/// binomials in base p.
pub fn lucas_residue(n: u64, m: u64, p: u64) -> Result<ResidueClass> {
    require_prime(p)?;
    let (mut n, mut m) = (n, m);
    let mut acc = 1u64;
    while m > 0 || n > 0 {
        let (nd, md) = (n % p, m % p);
        if md > nd {
            acc = 0;
            break;
        }
        let digit_binom = binom_exact(nd, md)
            .mod_floor(&BigInt::from(p))
            .to_u64()
            .expect("fits");
        acc = acc * digit_binom % p;
        n /= p;
        m /= p;
    }
    Ok(ResidueClass {
        value: acc,
        modulus: p,
    })
}

/// Number of carries at positions >= j when adding m and r in base p.
/// e_0 is the p-adic valuation of binom(m + r, m).
pub fn kummer_carries(m: u64, r: u64, p: u64, j: u32) -> Result<u32> {
    require_prime(p)?;
    let (mut m, mut r) = (m, r);
    let mut carry = 0u64;
    let mut count = 0u32;
    let mut pos = 0u32;
    while m > 0 || r > 0 || carry > 0 {
        let s = m % p + r % p + carry;
        carry = if s >= p { 1 } else { 0 };
        if carry == 1 && pos >= j {
            count += 1;
        }
        m /= p;
        r /= p;
        pos += 1;
    }
    Ok(count)
}

/// The generalized factorial k!_p: the product of the integers from 1 to k
/// coprime to p, reduced mod p^q.
pub fn factorial_p(k: u64, p: u64, q: u32) -> Result<ResidueClass> {
    require_prime(p)?;
    let modulus = p.checked_pow(q).ok_or_else(|| {
        Error::InvalidArgument(format!("modulus {p}^{q} overflows"))
    })?;
    let mut acc = 1u64;
    for t in 1..=k {
        if t % p != 0 {
            acc = acc * (t % modulus) % modulus;
        }
    }
    Ok(ResidueClass {
        value: acc,
        modulus,
    })
}

fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(modulus));
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&BigInt::from(modulus)).to_u64()
}

/// binom(n, m) mod p^q via Granville's theorem: strip the p-part found by
/// Kummer carries, take the product of digit-window generalized factorials
/// with the (+-1)^(e_(q-1)) sign (minus except p = 2, q >= 3), then put the
/// p-part back.
pub fn granville_residue(n: u64, m: u64, p: u64, q: u32) -> Result<ResidueClass> {
    require_prime(p)?;
    if m > n {
        return Err(Error::InvalidArgument("m exceeds n".into()));
    }
    let modulus = p.checked_pow(q).ok_or_else(|| {
        Error::InvalidArgument(format!("modulus {p}^{q} overflows"))
    })?;
    let r = n - m;
    let e0 = kummer_carries(m, r, p, 0)?;
    if e0 >= q {
        return Ok(ResidueClass {
            value: 0,
            modulus,
        });
    }
    let e_top = kummer_carries(m, r, p, q - 1)?;

    let nd = BaseDigits::of(n, p);
    let d = nd.digits.len();
    let window = |digits: &BaseDigits, j: usize| -> u64 {
        // N_j = n_j + n_(j+1) p + ... + n_(j+q-1) p^(q-1)
        let mut acc = 0u64;
        for t in (0..q as usize).rev() {
            acc = acc * p + digits.digit(j + t);
        }
        acc
    };
    let md = BaseDigits::of(m, p);
    let rd = BaseDigits::of(r, p);

    let mut acc = 1u64;
    for j in 0..d {
        let num = factorial_p(window(&nd, j), p, q)?.value;
        let den1 = factorial_p(window(&md, j), p, q)?.value;
        let den2 = factorial_p(window(&rd, j), p, q)?.value;
        let inv = mod_inverse(den1 * den2 % modulus, modulus)
            .expect("generalized factorials are coprime to p");
        acc = acc * num % modulus * inv % modulus;
    }
    let minus = !(p == 2 && q >= 3);
    if minus && e_top % 2 == 1 {
        acc = (modulus - acc) % modulus;
    }
    let value = acc * p.pow(e0) % modulus;
    Ok(ResidueClass { value, modulus })
}

/// One congruence statement, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCheck {
    /// prod_{k=1}^{p-1} (p r + k) = (p-1)!  mod p^2, for 0 <= r < p.
    Eq12 { p: u64, r: u64 },
    /// prod_{k=1}^{a} (p(p-1) + k) / a! = 1 - p sum_{k<=a} 1/k  mod p^2.
    Tech { p: u64, a: u64 },
    /// sum_{a=1}^{p-1} prod_{k=1}^{a-1} (p(p-1)+k) / a! = 0  mod p^2.
    Tech4 { p: u64 },
    /// (p^2)!_p = -1  mod p^2.
    ResSq { p: u64 },
    /// binom(p^s - 1, p^s - p^(s-1) - 1) = p - 1  mod p^2.
    Lm32 { p: u64, s: u32 },
    /// sum_{k=p^s-p^(s-1)}^{p^s-2} binom(k, p^s - p^(s-1) - 1) = 0  mod p^2.
    Lm31 { p: u64, s: u32 },
    /// sum_{k=p^s-p^(s-1)-1}^{p^s-1} binom(k, p^s - p^(s-1) - 1) = p  mod p^2.
    PMain { p: u64, s: u32 },
}

impl LemmaCheck {
    pub fn id(&self) -> &'static str {
        match self {
            LemmaCheck::Eq12 { .. } => "eq12",
            LemmaCheck::Tech { .. } => "tech",
            LemmaCheck::Tech4 { .. } => "tech4",
            LemmaCheck::ResSq { .. } => "ressq",
            LemmaCheck::Lm32 { .. } => "lm32",
            LemmaCheck::Lm31 { .. } => "lm31",
            LemmaCheck::PMain { .. } => "pmain",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            LemmaCheck::Eq12 { p, r } => vec![("p", p), ("r", r)],
            LemmaCheck::Tech { p, a } => vec![("p", p), ("a", a)],
            LemmaCheck::Tech4 { p } | LemmaCheck::ResSq { p } => vec![("p", p)],
            LemmaCheck::Lm32 { p, s }
            | LemmaCheck::Lm31 { p, s }
            | LemmaCheck::PMain { p, s } => vec![("p", p), ("s", u64::from(s))],
        }
    }
}

/// Outcome of checking one congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaStatus {
    Pass,
    Fail,
    /// The statement needs an odd prime (its proof pairs k with p - k);
    /// p = 2 is rejected rather than extrapolated.
    Unsupported(String),
}

#[derive(Clone, Debug)]
pub struct LemmaRecord {
    pub check: LemmaCheck,
    pub lhs: Option<ResidueClass>,
    pub rhs: Option<ResidueClass>,
    pub status: LemmaStatus,
}

impl LemmaRecord {
    pub fn passed(&self) -> bool {
        self.status == LemmaStatus::Pass
    }

    fn decide(check: LemmaCheck, lhs: ResidueClass, rhs: ResidueClass) -> LemmaRecord {
        LemmaRecord {
            check,
            lhs: Some(lhs),
            rhs: Some(rhs),
            status: if lhs == rhs {
                LemmaStatus::Pass
            } else {
                LemmaStatus::Fail
            },
        }
    }

    fn unsupported(check: LemmaCheck, why: &str) -> LemmaRecord {
        LemmaRecord {
            check,
            lhs: None,
            rhs: None,
            status: LemmaStatus::Unsupported(why.into()),
        }
    }
}

fn residue(value: u64, modulus: u64) -> ResidueClass {
    ResidueClass {
        value: value % modulus,
        modulus,
    }
}

fn bigint_residue(v: &BigInt, modulus: u64) -> ResidueClass {
    ResidueClass {
        value: v
            .mod_floor(&BigInt::from(modulus))
            .to_u64()
            .expect("reduced"),
        modulus,
    }
}

/// Evaluates one congruence statement exactly mod p^2.
pub fn verify_lemma(check: LemmaCheck) -> Result<LemmaRecord> {
    const ODD_ONLY: &str = "statement needs an odd prime";
    match check {
        LemmaCheck::Eq12 { p, r } => {
            require_prime(p)?;
            if r >= p {
                return Err(Error::InvalidArgument("need 0 <= r < p".into()));
            }
            if p == 2 {
                return Ok(LemmaRecord::unsupported(check, ODD_ONLY));
            }
            let m = p * p;
            let mut lhs = 1u64;
            for k in 1..p {
                lhs = lhs * ((p * r + k) % m) % m;
            }
            let mut rhs = 1u64;
            for k in 1..p {
                rhs = rhs * k % m;
            }
            Ok(LemmaRecord::decide(check, residue(lhs, m), residue(rhs, m)))
        }
        LemmaCheck::Tech { p, a } => {
            require_prime(p)?;
            if a == 0 || a >= p {
                return Err(Error::InvalidArgument("need 0 < a < p".into()));
            }
            let m = p * p;
            let mut prod = 1u64;
            let mut fact = 1u64;
            let mut harmonic = 0u64;
            for k in 1..=a {
                prod = prod * ((p * (p - 1) + k) % m) % m;
                fact = fact * k % m;
                harmonic = (harmonic + mod_inverse(k, m).expect("coprime")) % m;
            }
            let lhs = prod * mod_inverse(fact, m).expect("coprime") % m;
            let rhs = (1 + m - (p * harmonic % m)) % m;
            Ok(LemmaRecord::decide(check, residue(lhs, m), residue(rhs, m)))
        }
        LemmaCheck::Tech4 { p } => {
            require_prime(p)?;
            if p == 2 {
                return Ok(LemmaRecord::unsupported(check, ODD_ONLY));
            }
            let m = p * p;
            let mut sum = 0u64;
            for a in 1..p {
                let mut prod = 1u64;
                for k in 1..a {
                    prod = prod * ((p * (p - 1) + k) % m) % m;
                }
                let mut fact = 1u64;
                for k in 1..=a {
                    fact = fact * k % m;
                }
                sum = (sum + prod * mod_inverse(fact, m).expect("coprime")) % m;
            }
            Ok(LemmaRecord::decide(check, residue(sum, m), residue(0, m)))
        }
        LemmaCheck::ResSq { p } => {
            let lhs = factorial_p(p * p, p, 2)?;
            let m = lhs.modulus;
            Ok(LemmaRecord::decide(check, lhs, residue(m - 1, m)))
        }
        LemmaCheck::Lm32 { p, s } => {
            require_prime(p)?;
            if p == 2 {
                return Ok(LemmaRecord::unsupported(check, ODD_ONLY));
            }
            if s < 2 {
                return Err(Error::InvalidArgument("need s >= 2".into()));
            }
            let m = p * p;
            let ps = p.pow(s);
            let lhs = bigint_residue(&binom_exact(ps - 1, ps - p.pow(s - 1) - 1), m);
            Ok(LemmaRecord::decide(check, lhs, residue(p - 1, m)))
        }
        LemmaCheck::Lm31 { p, s } => {
            require_prime(p)?;
            if p == 2 {
                return Ok(LemmaRecord::unsupported(check, ODD_ONLY));
            }
            if s < 2 {
                return Err(Error::InvalidArgument("need s >= 2".into()));
            }
            let m = p * p;
            let ps = p.pow(s);
            let j = ps - p.pow(s - 1) - 1;
            let mut sum = BigInt::zero();
            for k in (ps - p.pow(s - 1))..=(ps - 2) {
                sum += binom_exact(k, j);
            }
            Ok(LemmaRecord::decide(check, bigint_residue(&sum, m), residue(0, m)))
        }
        LemmaCheck::PMain { p, s } => {
            require_prime(p)?;
            if s < 2 {
                return Err(Error::InvalidArgument("need s >= 2".into()));
            }
            let m = p * p;
            let sum = pmain_sum(p, s)?;
            Ok(LemmaRecord::decide(check, bigint_residue(&sum, m), residue(p, m)))
        }
    }
}

/// The full sum sum_{k=p^s-p^(s-1)-1}^{p^s-1} binom(k, p^s-p^(s-1)-1),
/// cross-checked against binom(p^s, p^(s-1)) (the hockey-stick identity).
pub fn pmain_sum(p: u64, s: u32) -> Result<BigInt> {
    require_prime(p)?;
    if s < 2 {
        return Err(Error::InvalidArgument("need s >= 2".into()));
    }
    let ps = p.pow(s);
    let j = ps - p.pow(s - 1) - 1;
    let mut sum = BigInt::zero();
    for k in j..=(ps - 1) {
        sum += binom_exact(k, j);
    }
    let closed = binom_exact(ps, p.pow(s - 1));
    assert_eq!(sum, closed, "hockey-stick identity");
    Ok(sum)
}

/// p-adic valuation of a big integer (0 for zero inputs by convention).
pub fn padic_valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0u32;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}
