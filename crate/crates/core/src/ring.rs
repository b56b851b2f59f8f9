//! Exact graded arithmetic in cohomology rings of towers of projective
//! bundles.
//!
//! A [`TowerRing`] is built from a point by repeatedly projectivizing a
//! bundle described by its total Chern class. Projectivizing a rank-`m`
//! bundle `E` adjoins one fiber generator `y` of weight 1 (the first Chern
//! class of the conjugate tautological line bundle) subject to the monic
//! relation
//!
//! ```text
//! y^m + c_1(E) y^(m-1) + ... + c_m(E) = 0
//! ```
//!
//! When `E` splits as a sum of line bundles with first Chern classes `u_i`,
//! the relation reads `prod_i (y + u_i) = 0`. Every class has a unique
//! normal form in the monomial basis where each fiber exponent is below its
//! stage rank; terms of weight above the total dimension vanish. Pairing
//! with the fundamental class reads off the coefficient of the top monomial.
//!
//! Relations only involve generators of strictly earlier stages, so
//! rewriting from the highest stage downward terminates without any
//! Groebner machinery. All values are immutable after construction.
//!
//! Internally a monomial is one `u128` with a fixed-width bit field per
//! stage. Any monomial that survives the weight cutoff has every exponent
//! bounded by the top weight, so field sums never carry. Towers needing
//! more than 128 bits are rejected at construction; their monomial bases
//! are far beyond desk scale anyway.

use crate::error::{Error, Result};
use crate::scalar::{CoeffMode, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector, one entry per stage of the owning ring.
pub type Exponents = Vec<u32>;

type Key = u128;
type TermMap = BTreeMap<Key, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
struct StageData {
    name: String,
    rank: u32,
    /// Total Chern class of the projectivized bundle, as unpacked exponent
    /// vectors over the full width of the owning ring (entries at this
    /// stage and later are zero). Contains the unit constant term.
    /// Layout-independent, so structural ring comparison uses it directly.
    chern: Vec<(Exponents, Scalar)>,
}

#[derive(Debug)]
struct RingData {
    mode: CoeffMode,
    stages: Vec<StageData>,
    top_weight: u32,
    /// Bits per packed exponent field; holds any value up to top_weight.
    field_width: u32,
    field_mask: Key,
    /// Packed rewrite rule per stage for `y^rank`:
    /// `-(c_1 y^(rank-1) + ... + c_rank)`.
    rhs: Vec<Vec<(Key, Scalar)>>,
    /// Packed top monomial (every exponent at rank - 1).
    top_key: Key,
}

impl RingData {
    fn pack(&self, exp: &[u32]) -> Key {
        let mut key: Key = 0;
        for (k, &e) in exp.iter().enumerate() {
            key |= Key::from(e) << (k as u32 * self.field_width);
        }
        key
    }

    fn unpack(&self, key: Key) -> Exponents {
        (0..self.stages.len())
            .map(|k| self.field(key, k))
            .collect()
    }

    fn field(&self, key: Key, k: usize) -> u32 {
        ((key >> (k as u32 * self.field_width)) & self.field_mask) as u32
    }

    fn weight(&self, key: Key) -> u32 {
        let mut w = 0;
        let mut rest = key;
        while rest != 0 {
            w += (rest & self.field_mask) as u32;
            rest >>= self.field_width;
        }
        w
    }
}

fn field_width_for(top_weight: u32) -> u32 {
    // Enough bits for any exponent up to the top weight.
    (u32::BITS - top_weight.max(1).leading_zeros()).max(1)
}

fn weight_of(exp: &[u32]) -> u32 {
    exp.iter().sum()
}

/// A graded quotient ring presented as an ordered tower of projectivization
/// stages over a point.
#[derive(Clone, Debug)]
pub struct TowerRing {
    data: Arc<RingData>,
}

/// A fiber generator of a tower ring. Every generator has weight 1
/// (real degree 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub stage_index: usize,
}

/// Public view of one stage of a tower.
#[derive(Clone, Debug)]
pub struct Stage {
    pub generator: Generator,
    pub rank: u32,
    pub bundle_chern: RingClass,
}

impl TowerRing {
    /// The ring of a point: no stages, top weight 0.
    pub fn point(mode: CoeffMode) -> TowerRing {
        TowerRing {
            data: Arc::new(RingData {
                mode,
                stages: Vec::new(),
                top_weight: 0,
                field_width: 1,
                field_mask: 1,
                rhs: Vec::new(),
                top_key: 0,
            }),
        }
    }

    pub fn mode(&self) -> CoeffMode {
        self.data.mode
    }

    pub fn stage_count(&self) -> usize {
        self.data.stages.len()
    }

    /// Total complex dimension: the sum of (rank - 1) over all stages.
    pub fn top_weight(&self) -> u32 {
        self.data.top_weight
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.data
            .stages
            .iter()
            .enumerate()
            .map(|(i, s)| Generator {
                name: s.name.clone(),
                stage_index: i,
            })
            .collect()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.data.stages.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn stage(&self, index: usize) -> Stage {
        let s = &self.data.stages[index];
        Stage {
            generator: Generator {
                name: s.name.clone(),
                stage_index: index,
            },
            rank: s.rank,
            bundle_chern: self.class_from_terms(s.chern.iter().cloned()),
        }
    }

    /// Rings are interchangeable when their stage structure matches;
    /// generator names are presentation only.
    pub fn same_ring(&self, other: &TowerRing) -> bool {
        if Arc::ptr_eq(&self.data, &other.data) {
            return true;
        }
        self.data.mode == other.data.mode && self.same_stages(other)
    }

    fn same_stages(&self, other: &TowerRing) -> bool {
        self.data.stages.len() == other.data.stages.len()
            && self
                .data
                .stages
                .iter()
                .zip(&other.data.stages)
                .all(|(a, b)| a.rank == b.rank && a.chern == b.chern)
    }

    pub fn zero(&self) -> RingClass {
        RingClass {
            ring: self.clone(),
            terms: TermMap::new(),
        }
    }

    pub fn one(&self) -> RingClass {
        self.constant(Scalar::one())
    }

    pub fn constant(&self, s: Scalar) -> RingClass {
        let mut terms = TermMap::new();
        if !s.is_zero() {
            terms.insert(0, s);
        }
        RingClass {
            ring: self.clone(),
            terms,
        }
    }

    /// The class of the fiber generator of stage `index`, in normal form.
    /// For a rank-1 stage this immediately rewrites to minus the bundle's
    /// first Chern class.
    pub fn generator(&self, index: usize) -> RingClass {
        let mut exp = vec![0u32; self.stage_count()];
        exp[index] = 1;
        self.class_from_terms([(exp, Scalar::one())])
    }

    /// Builds a class from raw (exponents, coefficient) pairs and reduces it
    /// to normal form.
    pub fn class_from_terms<I>(&self, terms: I) -> RingClass
    where
        I: IntoIterator<Item = (Exponents, Scalar)>,
    {
        let width = self.stage_count();
        let top = self.data.top_weight;
        let mut raw = TermMap::new();
        for (exp, coeff) in terms {
            assert_eq!(exp.len(), width, "exponent width mismatch");
            // Filtering by weight first also guarantees the exponents fit
            // their packed fields.
            if coeff.is_zero() || weight_of(&exp) > top {
                continue;
            }
            add_term(&mut raw, self.data.pack(&exp), coeff);
        }
        RingClass {
            ring: self.clone(),
            terms: self.reduce(raw),
        }
    }

    /// Extends the tower by the projectivization of a rank-`rank` bundle
    /// with the given total Chern class, returning the extended ring and
    /// the class of the new fiber generator.
    pub fn extend_by_projectivization(
        &self,
        bundle_chern: &RingClass,
        rank: u32,
        name: &str,
    ) -> Result<(TowerRing, RingClass)> {
        if !self.same_ring(&bundle_chern.ring) {
            return Err(Error::OwnershipMismatch);
        }
        if rank == 0 {
            return Err(Error::MalformedBundle("rank must be positive".into()));
        }
        if !bundle_chern.constant_term().is_one() {
            return Err(Error::MalformedBundle(format!(
                "total Chern class must have constant term 1, got {}",
                bundle_chern.constant_term()
            )));
        }
        let chern_unpacked = bundle_chern.unpacked_terms();
        if chern_unpacked.iter().any(|(e, _)| weight_of(e) > rank) {
            return Err(Error::MalformedBundle(format!(
                "total Chern class has components above weight {rank}"
            )));
        }

        let old_width = self.stage_count();
        let fresh = self.fresh_name(name);
        let mut stages: Vec<StageData> = self
            .data
            .stages
            .iter()
            .map(|s| StageData {
                name: s.name.clone(),
                rank: s.rank,
                chern: pad_exponents(&s.chern, old_width + 1),
            })
            .collect();
        stages.push(StageData {
            name: fresh,
            rank,
            chern: pad_exponents(&chern_unpacked, old_width + 1),
        });
        let ring = build_ring(self.data.mode, stages, self.data.top_weight + rank - 1)?;
        let gen = ring.generator(old_width);
        Ok((ring, gen))
    }

    /// Tensor product of two towers: stages concatenated, dimensions added.
    /// Colliding generator names from the right factor are renamed.
    pub fn product(&self, other: &TowerRing) -> Result<TowerRing> {
        if self.data.mode != other.data.mode {
            return Err(Error::ModeMismatch);
        }
        let lw = self.stage_count();
        let rw = other.stage_count();
        let mut stages: Vec<StageData> = self
            .data
            .stages
            .iter()
            .map(|s| StageData {
                name: s.name.clone(),
                rank: s.rank,
                chern: pad_exponents(&s.chern, lw + rw),
            })
            .collect();
        let mut taken: Vec<String> = stages.iter().map(|s| s.name.clone()).collect();
        for s in &other.data.stages {
            let name = fresh_among(&taken, &s.name);
            taken.push(name.clone());
            stages.push(StageData {
                name,
                rank: s.rank,
                chern: shift_exponents(&s.chern, lw, lw + rw),
            });
        }
        build_ring(
            self.data.mode,
            stages,
            self.data.top_weight + other.data.top_weight,
        )
    }

    /// Pulls a class of a prefix tower back to this ring (the projection
    /// `self -> prefix` collapses the later stages).
    pub fn embed_prefix(&self, class: &RingClass) -> Result<RingClass> {
        self.embed_at(class, 0)
    }

    /// Embeds a class of a factor whose stages sit at `offset` inside this
    /// ring, as produced by [`TowerRing::product`].
    pub fn embed_at(&self, class: &RingClass, offset: usize) -> Result<RingClass> {
        let k = class.ring.stage_count();
        if offset + k > self.stage_count() || self.data.mode != class.ring.data.mode {
            return Err(Error::OwnershipMismatch);
        }
        for (mine, theirs) in self.data.stages[offset..offset + k]
            .iter()
            .zip(&class.ring.data.stages)
        {
            let shifted = shift_exponents(&theirs.chern, offset, self.stage_count());
            if mine.rank != theirs.rank || mine.chern != shifted {
                return Err(Error::OwnershipMismatch);
            }
        }
        let terms = class
            .unpacked_terms()
            .into_iter()
            .map(|(e, c)| {
                let mut exp = vec![0u32; self.stage_count()];
                exp[offset..offset + k].copy_from_slice(&e);
                (self.data.pack(&exp), c)
            })
            .collect();
        Ok(RingClass {
            ring: self.clone(),
            terms,
        })
    }

    /// Carries a class of the same tower across a coefficient-mode switch.
    pub fn convert_mode(&self, class: &RingClass) -> Result<RingClass> {
        if !self.same_stages(&class.ring) {
            return Err(Error::OwnershipMismatch);
        }
        Ok(RingClass {
            ring: self.clone(),
            terms: class.terms.clone(),
        })
    }

    /// The same tower with the coefficient mode switched.
    pub fn with_mode(&self, mode: CoeffMode) -> TowerRing {
        if mode == self.data.mode {
            return self.clone();
        }
        TowerRing {
            data: Arc::new(RingData {
                mode,
                stages: self.data.stages.clone(),
                top_weight: self.data.top_weight,
                field_width: self.data.field_width,
                field_mask: self.data.field_mask,
                rhs: self.data.rhs.clone(),
                top_key: self.data.top_key,
            }),
        }
    }

    fn fresh_name(&self, candidate: &str) -> String {
        let taken: Vec<String> = self.data.stages.iter().map(|s| s.name.clone()).collect();
        fresh_among(&taken, candidate)
    }

    /// Rewrites a raw term map to normal form by substituting stage
    /// relations from the highest stage down. Rewriting at stage k only
    /// raises exponents of earlier stages, so one downward sweep suffices;
    /// merging into the map after every substitution keeps the intermediate
    /// term count bounded.
    fn reduce(&self, mut m: TermMap) -> TermMap {
        let data = &self.data;
        for k in (0..data.stages.len()).rev() {
            let rank = data.stages[k].rank;
            let rank_shifted = Key::from(rank) << (k as u32 * data.field_width);
            loop {
                let over: Vec<Key> = m
                    .keys()
                    .copied()
                    .filter(|key| data.field(*key, k) >= rank)
                    .collect();
                if over.is_empty() {
                    break;
                }
                for key in over {
                    let coeff = m.remove(&key).expect("key present");
                    if coeff.is_zero() {
                        continue;
                    }
                    let base = key - rank_shifted;
                    // The relation is homogeneous, so total weight (and
                    // hence every field) stays within bounds: no carries.
                    for (rkey, rc) in &data.rhs[k] {
                        add_term(&mut m, base + rkey, &coeff * rc);
                    }
                }
            }
        }
        m.retain(|_, c| !c.is_zero());
        m
    }
}

impl PartialEq for TowerRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl Eq for TowerRing {}

/// Computes the packed layout and rewrite rules for a stage list.
fn build_ring(mode: CoeffMode, stages: Vec<StageData>, top_weight: u32) -> Result<TowerRing> {
    let field_width = field_width_for(top_weight);
    if stages.len() as u32 * field_width > 128 {
        return Err(Error::InvalidArgument(format!(
            "tower needs {} exponent bits, more than the engine's 128",
            stages.len() as u32 * field_width
        )));
    }
    let field_mask = (1 as Key)
        .checked_shl(field_width)
        .map(|v| v - 1)
        .unwrap_or(Key::MAX);
    let pack = |exp: &[u32]| -> Key {
        let mut key: Key = 0;
        for (k, &e) in exp.iter().enumerate() {
            key |= Key::from(e) << (k as u32 * field_width);
        }
        key
    };
    let mut rhs = Vec::with_capacity(stages.len());
    for (k, s) in stages.iter().enumerate() {
        let mut rule = Vec::new();
        for (exp, coeff) in &s.chern {
            let w = weight_of(exp);
            if w == 0 {
                continue;
            }
            let mut e = exp.clone();
            e[k] = s.rank - w;
            rule.push((pack(&e), -coeff));
        }
        rhs.push(rule);
    }
    let top_exp: Exponents = stages.iter().map(|s| s.rank - 1).collect();
    let top_key = pack(&top_exp);
    Ok(TowerRing {
        data: Arc::new(RingData {
            mode,
            stages,
            top_weight,
            field_width,
            field_mask,
            rhs,
            top_key,
        }),
    })
}

fn fresh_among(taken: &[String], candidate: &str) -> String {
    if !taken.iter().any(|n| n == candidate) {
        return candidate.to_string();
    }
    let mut k = 2usize;
    loop {
        let name = format!("{candidate}_{k}");
        if !taken.iter().any(|n| n == &name) {
            return name;
        }
        k += 1;
    }
}

fn pad_exponents(terms: &[(Exponents, Scalar)], width: usize) -> Vec<(Exponents, Scalar)> {
    shift_exponents(terms, 0, width)
}

fn shift_exponents(
    terms: &[(Exponents, Scalar)],
    offset: usize,
    width: usize,
) -> Vec<(Exponents, Scalar)> {
    terms
        .iter()
        .map(|(e, c)| {
            let mut exp = vec![0u32; width];
            exp[offset..offset + e.len()].copy_from_slice(e);
            (exp, c.clone())
        })
        .collect()
}

fn add_term(map: &mut TermMap, key: Key, coeff: Scalar) {
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// An element of a [`TowerRing`] in canonical normal form: every fiber
/// exponent is below its stage rank and no term exceeds the top weight.
/// Zero is the empty term map.
#[derive(Clone)]
pub struct RingClass {
    ring: TowerRing,
    terms: TermMap,
}

impl RingClass {
    pub fn ring(&self) -> &TowerRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Terms as (exponent vector, coefficient) pairs in deterministic order.
    pub fn unpacked_terms(&self) -> Vec<(Exponents, Scalar)> {
        self.terms
            .iter()
            .map(|(k, c)| (self.ring.data.unpack(*k), c.clone()))
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &Scalar)> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (self.ring.data.unpack(*k), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&0).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The homogeneous component of the given weight.
    pub fn weight_component(&self, weight: u32) -> RingClass {
        RingClass {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| self.ring.data.weight(**k) == weight)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Largest weight with a nonzero term; `None` for the zero class.
    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|k| self.ring.data.weight(*k)).max()
    }

    /// True when every term has the given weight (the zero class is
    /// homogeneous of every weight).
    pub fn is_homogeneous_of(&self, weight: u32) -> bool {
        self.terms.keys().all(|k| self.ring.data.weight(*k) == weight)
    }

    fn check_owner(&self, other: &RingClass) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::OwnershipMismatch)
        }
    }

    pub fn add(&self, other: &RingClass) -> Result<RingClass> {
        self.check_owner(other)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_term(&mut terms, *k, c.clone());
        }
        Ok(RingClass {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &RingClass) -> Result<RingClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingClass {
        RingClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, s: &Scalar) -> RingClass {
        if s.is_zero() {
            return self.ring.zero();
        }
        RingClass {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &RingClass) -> Result<RingClass> {
        self.check_owner(other)?;
        let data = &self.ring.data;
        let top = data.top_weight;
        let a: Vec<(Key, u32, &Scalar)> = self
            .terms
            .iter()
            .map(|(k, c)| (*k, data.weight(*k), c))
            .collect();
        let b: Vec<(Key, u32, &Scalar)> = other
            .terms
            .iter()
            .map(|(k, c)| (*k, data.weight(*k), c))
            .collect();
        let mut raw = TermMap::new();
        for (ka, wa, ca) in &a {
            for (kb, wb, cb) in &b {
                // Weight is graded, so overflowing terms die anyway;
                // skipping them also keeps the packed fields carry-free.
                if wa + wb > top {
                    continue;
                }
                add_term(&mut raw, ka + kb, *ca * *cb);
            }
        }
        Ok(RingClass {
            ring: self.ring.clone(),
            terms: self.ring.reduce(raw),
        })
    }

    pub fn pow(&self, exp: u32) -> RingClass {
        let mut acc = self.ring.one();
        for _ in 0..exp {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Inverse of a unit: the constant term must be invertible (any nonzero
    /// scalar in rational mode, +-1 in integer mode). Computed by the finite
    /// geometric series in the nilpotent part.
    pub fn invert_unit(&self) -> Result<RingClass> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NonUnitConstant("0".into()));
        }
        if self.ring.mode() == CoeffMode::Integer && !c.is_unit_integer() {
            return Err(Error::NonUnitConstant(c.to_string()));
        }
        let c_inv = c.recip().expect("nonzero");
        // a = c (1 + n) with n nilpotent; 1/a = (1/c) sum (-n)^r.
        let nil = self.scalar_mul(&c_inv).sub(&self.ring.one())?;
        let mut acc = self.ring.one();
        let mut power = self.ring.one();
        for _ in 0..self.ring.top_weight() {
            power = power.mul(&nil)?.neg();
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scalar_mul(&c_inv))
    }

    /// Truncated exponential of a class with zero constant term. Divides by
    /// factorials, so the ring must be in rational mode.
    pub fn exp_nilpotent(&self) -> Result<RingClass> {
        if self.ring.mode() != CoeffMode::Rational {
            return Err(Error::RationalModeRequired);
        }
        if !self.constant_term().is_zero() {
            return Err(Error::InvalidArgument(
                "exponential needs a zero constant term".into(),
            ));
        }
        let mut acc = self.ring.one();
        let mut term = self.ring.one();
        for r in 1..=self.ring.top_weight() {
            term = term.mul(self)?.scalar_mul(
                &Scalar::from_int(i64::from(r)).recip().expect("nonzero"),
            );
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Pairing with the fundamental class: the coefficient of the top
    /// monomial (every fiber exponent at rank - 1). Classes without a top
    /// component integrate to 0.
    pub fn integrate(&self) -> Scalar {
        self.terms
            .get(&self.ring.data.top_key)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

impl PartialEq for RingClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.terms == other.terms
    }
}

impl Eq for RingClass {}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.generator_names();
        let mut first = true;
        for (exp, coeff) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (i, e) in exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingClass({self})")
    }
}

macro_rules! class_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&RingClass> for &RingClass {
            type Output = RingClass;
            fn $method(self, rhs: &RingClass) -> RingClass {
                RingClass::$method(self, rhs).expect("classes from different rings")
            }
        }
    };
}

class_binop!(Add, add);
class_binop!(Sub, sub);
class_binop!(Mul, mul);

impl std::ops::Neg for &RingClass {
    type Output = RingClass;
    fn neg(self) -> RingClass {
        RingClass::neg(self)
    }
}
