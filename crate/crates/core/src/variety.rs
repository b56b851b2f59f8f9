//! Stably complex varieties presented as towers of projective bundles:
//! a tower ring together with the list of line-bundle factors of the stable
//! tangent bundle and the complex dimension.
//!
//! The named families here are all built from three primitives: bounded
//! flag bundles over a base, projectivizations of explicit bundles, and
//! products. A blow-up correction term carries one deliberately reversed
//! tangent line (the nonstandard stably complex structure), recorded as
//! [`TangentFactor::NegLineClass`].

use crate::error::{Error, Result};
use crate::ring::{RingClass, TowerRing};
use crate::scalar::{CoeffMode, Scalar};

/// One factor of a stable tangent bundle.
///
/// `LineClass(u)` contributes the Chern root `u`. `NegLineClass(u)`
/// contributes the root `-u` (a line bundle entering the stable structure
/// with reversed orientation). `TwistedBlock` is a rank-`rank` bundle given
/// by its total Chern class, with every root shifted by `twist` — the shape
/// produced by projectivizing a bundle that need not split.
#[derive(Clone, Debug, PartialEq)]
pub enum TangentFactor {
    LineClass(RingClass),
    NegLineClass(RingClass),
    TwistedBlock {
        chern: RingClass,
        rank: u32,
        twist: RingClass,
    },
}

impl TangentFactor {
    /// Number of Chern roots this factor contributes.
    pub fn root_count(&self) -> u32 {
        match self {
            TangentFactor::LineClass(_) | TangentFactor::NegLineClass(_) => 1,
            TangentFactor::TwistedBlock { rank, .. } => *rank,
        }
    }
}

/// A variety: tower ring, stable tangent factors, complex dimension.
#[derive(Clone, Debug)]
pub struct Variety {
    name: String,
    ring: TowerRing,
    tangent: Vec<TangentFactor>,
    dim: u32,
}

/// How a bundle to projectivize is described.
#[derive(Clone, Debug)]
pub enum BundleSpec {
    /// A sum of line bundles given by their first Chern classes.
    Lines(Vec<RingClass>),
    /// A bundle given by its total Chern class and rank.
    Chern { total: RingClass, rank: u32 },
}

impl Variety {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &TowerRing {
        &self.ring
    }

    pub fn tangent(&self) -> &[TangentFactor] {
        &self.tangent
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Total number of stable Chern roots; always at least `dim`.
    pub fn stable_root_count(&self) -> u32 {
        self.tangent.iter().map(TangentFactor::root_count).sum()
    }

    /// The point.
    pub fn point() -> Variety {
        Variety {
            name: "point".into(),
            ring: TowerRing::point(CoeffMode::Integer),
            tangent: Vec::new(),
            dim: 0,
        }
    }

    /// Complex projective space of dimension `n`: the projectivization of a
    /// trivial rank-(n+1) bundle over a point. Its stable tangent bundle is
    /// n+1 copies of the conjugate tautological line bundle.
    pub fn projective_space(n: u32) -> Variety {
        let pt = TowerRing::point(CoeffMode::Integer);
        let (ring, y) = pt
            .extend_by_projectivization(&pt.one(), n + 1, "y")
            .expect("trivial bundle is well formed");
        Variety {
            name: format!("CP({n})"),
            tangent: vec![TangentFactor::TwistedBlock {
                chern: ring.one(),
                rank: n + 1,
                twist: y,
            }],
            dim: n,
            ring,
        }
    }

    /// The bounded flag manifold of dimension `n`: the tower of n rank-2
    /// stages where stage a projectivizes (previous tautological) + trivial,
    /// with relations t_a^2 = t_a t_(a-1). Stage a contributes the tangent
    /// lines t_a - t_(a-1) and t_a.
    pub fn bounded_flag(n: u32) -> Variety {
        let mut ring = TowerRing::point(CoeffMode::Integer);
        for a in 1..=n {
            let chern = if a == 1 {
                ring.one()
            } else {
                let prev = ring.generator(ring.stage_count() - 1);
                ring.one().sub(&prev).expect("same ring")
            };
            ring = ring
                .extend_by_projectivization(&chern, 2, &format!("t{a}"))
                .expect("well-formed stage")
                .0;
        }
        let mut tangent = Vec::new();
        for a in 1..=n as usize {
            let ta = ring.generator(a - 1);
            let prev = if a >= 2 { ring.generator(a - 2) } else { ring.zero() };
            tangent.push(TangentFactor::LineClass(
                ta.sub(&prev).expect("same ring"),
            ));
            tangent.push(TangentFactor::LineClass(ta));
        }
        Variety {
            name: format!("BF({n})"),
            ring,
            tangent,
            dim: n,
        }
    }

    /// Bounded flag bundle over `base`, from the ordered first Chern classes
    /// (x_1, ..., x_(k+1)) of the defining line bundles, the last one
    /// attached last. Stage i projectivizes (previous tautological) + next
    /// line, imposing (y_(i+1) - y_i)(y_(i+1) + x_(i+1)) = 0 with
    /// y_1 = -x_1, and contributes those two factors to the tangent bundle.
    pub fn bf_bundle(base: &Variety, line_c1s: &[RingClass]) -> Result<Variety> {
        Self::bf_bundle_named(base, line_c1s, "y")
    }

    pub fn bf_bundle_named(
        base: &Variety,
        line_c1s: &[RingClass],
        gen_prefix: &str,
    ) -> Result<Variety> {
        if line_c1s.is_empty() {
            return Err(Error::InvalidArgument(
                "a bounded flag bundle needs at least one line bundle".into(),
            ));
        }
        for c in line_c1s {
            if !base.ring.same_ring(c.ring()) {
                return Err(Error::OwnershipMismatch);
            }
            if !c.is_homogeneous_of(1) {
                return Err(Error::WrongWeight {
                    expected: 1,
                    found: c.to_string(),
                });
            }
        }
        let mut ring = base.ring.clone();
        // Tangent factors collected as (class in current ring); re-embedded
        // into the final ring at the end.
        let mut new_lines: Vec<RingClass> = Vec::new();
        // c_1 of the conjugate tautological of the previous stage: -x_1 at
        // the start, then the last fiber generator.
        let mut prev_y = line_c1s[0].neg();
        for (i, x_next) in line_c1s.iter().enumerate().skip(1) {
            let x_next = ring.embed_prefix(x_next)?;
            let prev = ring.embed_prefix(&prev_y)?;
            // c(zeta_i + xi_(i+1)) = (1 - y_i)(1 + x_(i+1))
            let chern = ring
                .one()
                .sub(&prev)?
                .mul(&ring.one().add(&x_next)?)?;
            let (ext, y) = ring.extend_by_projectivization(
                &chern,
                2,
                &format!("{gen_prefix}{i}"),
            )?;
            let prev = ext.embed_prefix(&prev)?;
            let x_next = ext.embed_prefix(&x_next)?;
            new_lines = new_lines
                .iter()
                .map(|c| ext.embed_prefix(c))
                .collect::<Result<_>>()?;
            new_lines.push(y.sub(&prev)?);
            new_lines.push(y.add(&x_next)?);
            prev_y = y;
            ring = ext;
        }
        let mut tangent: Vec<TangentFactor> = base
            .tangent
            .iter()
            .map(|f| embed_factor(&ring, f))
            .collect::<Result<_>>()?;
        for c in new_lines {
            tangent.push(TangentFactor::LineClass(ring.embed_prefix(&c)?));
        }
        let dim = base.dim + (line_c1s.len() as u32 - 1);
        Ok(Variety {
            name: format!("BFbundle({}, {})", base.name, line_c1s.len()),
            ring,
            tangent,
            dim,
        })
    }

    /// Projectivization of a bundle over `base`. For a split bundle the
    /// tangent gains one line class per root (shifted by the fiber class);
    /// for a bundle given by its total Chern class it gains a twisted block.
    pub fn projectivize(base: &Variety, bundle: &BundleSpec, fiber_name: &str) -> Result<Variety> {
        match bundle {
            BundleSpec::Lines(c1s) => {
                if c1s.is_empty() {
                    return Err(Error::MalformedBundle("empty line list".into()));
                }
                let mut chern = base.ring.one();
                for c in c1s {
                    if !base.ring.same_ring(c.ring()) {
                        return Err(Error::OwnershipMismatch);
                    }
                    if !c.is_homogeneous_of(1) {
                        return Err(Error::WrongWeight {
                            expected: 1,
                            found: c.to_string(),
                        });
                    }
                    chern = chern.mul(&base.ring.one().add(c)?)?;
                }
                let rank = c1s.len() as u32;
                let (ring, y) = base
                    .ring
                    .extend_by_projectivization(&chern, rank, fiber_name)?;
                let mut tangent: Vec<TangentFactor> = base
                    .tangent
                    .iter()
                    .map(|f| embed_factor(&ring, f))
                    .collect::<Result<_>>()?;
                for c in c1s {
                    let c = ring.embed_prefix(c)?;
                    tangent.push(TangentFactor::LineClass(y.add(&c)?));
                }
                Ok(Variety {
                    name: format!("P({}...)", base.name),
                    ring,
                    tangent,
                    dim: base.dim + rank - 1,
                })
            }
            BundleSpec::Chern { total, rank } => {
                let (ring, y) = base
                    .ring
                    .extend_by_projectivization(total, *rank, fiber_name)?;
                let mut tangent: Vec<TangentFactor> = base
                    .tangent
                    .iter()
                    .map(|f| embed_factor(&ring, f))
                    .collect::<Result<_>>()?;
                tangent.push(TangentFactor::TwistedBlock {
                    chern: ring.embed_prefix(total)?,
                    rank: *rank,
                    twist: y,
                });
                Ok(Variety {
                    name: format!("P({}...)", base.name),
                    ring,
                    tangent,
                    dim: base.dim + rank - 1,
                })
            }
        }
    }

    /// Product of two varieties: tensor-product ring, tangent factors of
    /// both sides, dimensions added.
    pub fn product(a: &Variety, b: &Variety) -> Result<Variety> {
        let ring = a.ring.product(&b.ring)?;
        let offset = a.ring.stage_count();
        let mut tangent: Vec<TangentFactor> = a
            .tangent
            .iter()
            .map(|f| embed_factor(&ring, f))
            .collect::<Result<_>>()?;
        for f in &b.tangent {
            tangent.push(embed_factor_at(&ring, f, offset)?);
        }
        Ok(Variety {
            name: format!("product({}, {})", a.name, b.name),
            ring,
            tangent,
            dim: a.dim + b.dim,
        })
    }

    /// The family X(i, j): a bounded flag bundle over BF_i of dimension
    /// i + j. The defining line list is (j - i) trivial lines, then the
    /// classes t_(a-1) - t_a for a = 1..i, then t_i attached last.
    /// X(0, j) is BF_j.
    pub fn x_variety(i: u32, j: u32) -> Result<Variety> {
        if i > j {
            return Err(Error::InvalidArgument(format!(
                "X({i},{j}) needs 0 <= i <= j"
            )));
        }
        if i == 0 && j == 0 {
            return Ok(Variety::point());
        }
        let base = Variety::bounded_flag(i);
        let lines = x_line_list(&base, i, j)?;
        let mut v = Variety::bf_bundle(&base, &lines)?;
        v.name = format!("X({i},{j})");
        Ok(v)
    }

    /// The codimension-2 center Z(i, j) inside X(i, j): a bounded flag
    /// bundle over BF_(i-1) of dimension i + j - 2, whose defining list is
    /// (j - i) trivial lines, t_(a-1) - t_a for a = 1..i-1, then a trivial
    /// line attached last.
    pub fn z_variety(i: u32, j: u32) -> Result<Variety> {
        if i < 1 || i > j {
            return Err(Error::InvalidArgument(format!(
                "Z({i},{j}) needs 1 <= i <= j"
            )));
        }
        let base = Variety::bounded_flag(i - 1);
        let mut lines: Vec<RingClass> = Vec::new();
        for _ in 0..(j - i) {
            lines.push(base.ring.zero());
        }
        for a in 1..i {
            lines.push(beta_star_c1(&base.ring, a as usize)?);
        }
        lines.push(base.ring.zero());
        let mut v = Variety::bf_bundle(&base, &lines)?;
        v.name = format!("Z({i},{j})");
        Ok(v)
    }

    /// The blow-up correction term Y(i, j): the projectivization of
    /// (normal bundle of Z in X) + conjugate-trivial over Z(i, j), carrying
    /// the nonstandard stably complex structure. The three-line stage
    /// relation is (y + y_j + x)(y + x) y = 0 with x = t_(i-1), and the
    /// tangent gains the lines y + y_j + x and y + x together with the
    /// reversed line y.
    pub fn y_variety(i: u32, j: u32) -> Result<Variety> {
        if i < 1 || i > j {
            return Err(Error::InvalidArgument(format!(
                "Y({i},{j}) needs 1 <= i <= j"
            )));
        }
        let z = Variety::z_variety(i, j)?;
        let ring = z.ring.clone();
        // x = t_(i-1) in the BF_(i-1) base (zero for i = 1).
        let x = if i >= 2 {
            ring.generator(i as usize - 2)
        } else {
            ring.zero()
        };
        // y_j = conjugate tautological of the last stage of Z (zero when
        // Z has no stages, i.e. j = 1).
        let y_j = if j >= 2 {
            ring.generator(ring.stage_count() - 1)
        } else {
            ring.zero()
        };
        let u1 = y_j.add(&x)?;
        let chern = ring
            .one()
            .add(&u1)?
            .mul(&ring.one().add(&x)?)?;
        let (ext, y) = ring.extend_by_projectivization(&chern, 3, "y")?;
        let mut tangent: Vec<TangentFactor> = z
            .tangent
            .iter()
            .map(|f| embed_factor(&ext, f))
            .collect::<Result<_>>()?;
        tangent.push(TangentFactor::LineClass(
            y.add(&ext.embed_prefix(&u1)?)?,
        ));
        tangent.push(TangentFactor::LineClass(
            y.add(&ext.embed_prefix(&x)?)?,
        ));
        tangent.push(TangentFactor::NegLineClass(y));
        Ok(Variety {
            name: format!("Y({i},{j})"),
            ring: ext,
            tangent,
            dim: i + j,
        })
    }

    /// The Milnor hypersurface H(i, j) as a projective bundle over CP^i:
    /// the bundle is the conjugate complement of the tautological line
    /// (total Chern class (1+y)^(-1), rank i) plus j - i trivial lines.
    pub fn h_variety(i: u32, j: u32) -> Result<Variety> {
        if i < 1 || i > j {
            return Err(Error::InvalidArgument(format!(
                "H({i},{j}) needs 1 <= i <= j"
            )));
        }
        let base = Variety::projective_space(i);
        let y = base.ring.generator(0);
        let total = base.ring.one().add(&y)?.invert_unit()?;
        let mut v = Variety::projectivize(
            &base,
            &BundleSpec::Chern { total, rank: j },
            "w",
        )?;
        v.name = format!("H({i},{j})");
        Ok(v)
    }

    /// The Buchstaber-Ray variety BR(i, j): the projectivization over BF_i
    /// of the sum of the complement lines (c_1 = t_(k-1) - t_k for
    /// k = 1..i) plus j - i trivial lines.
    pub fn br_variety(i: u32, j: u32) -> Result<Variety> {
        if i < 1 || i > j {
            return Err(Error::InvalidArgument(format!(
                "BR({i},{j}) needs 1 <= i <= j"
            )));
        }
        let base = Variety::bounded_flag(i);
        let mut lines: Vec<RingClass> = Vec::new();
        for k in 1..=i {
            lines.push(beta_star_c1(&base.ring, k as usize)?);
        }
        for _ in 0..(j - i) {
            lines.push(base.ring.zero());
        }
        let mut v = Variety::projectivize(&base, &BundleSpec::Lines(lines), "w")?;
        v.name = format!("BR({i},{j})");
        Ok(v)
    }

    /// The family L(i, j): the projectivization over CP^i of the
    /// tautological line bundle plus j trivial lines, of dimension i + j.
    pub fn l_variety(i: u32, j: u32) -> Result<Variety> {
        if j < 1 {
            return Err(Error::InvalidArgument(format!(
                "L({i},{j}) needs j >= 1"
            )));
        }
        let base = Variety::projective_space(i);
        let y = base.ring.generator(0);
        let mut lines = vec![y.neg()];
        for _ in 0..j {
            lines.push(base.ring.zero());
        }
        let mut v = Variety::projectivize(&base, &BundleSpec::Lines(lines), "w")?;
        v.name = format!("L({i},{j})");
        Ok(v)
    }

    /// Milnor number of the hypersurface dual to the line bundle with first
    /// Chern class `c1`: the pairing of (p_(n-1) of the tangent minus
    /// c1^(n-1)) times c1 with the fundamental class. For n = 1 the power
    /// sum degenerates to the stable root count.
    pub fn dual_hypersurface_milnor(&self, c1: &RingClass) -> Result<Scalar> {
        if !self.ring.same_ring(c1.ring()) {
            return Err(Error::OwnershipMismatch);
        }
        if !c1.is_homogeneous_of(1) {
            return Err(Error::WrongWeight {
                expected: 1,
                found: c1.to_string(),
            });
        }
        let n = self.dim;
        if n == 0 {
            return Err(Error::InvalidArgument(
                "dualization needs positive dimension".into(),
            ));
        }
        if n == 1 {
            let p0 = Scalar::from_int(i64::from(self.stable_root_count()) - 1);
            return Ok(p0 * c1.integrate());
        }
        let p = crate::charnum::power_sum(self, n - 1)?;
        Ok(p.sub(&c1.pow(n - 1))?.mul(c1)?.integrate())
    }

    /// The same variety with its ring switched to rational coefficients.
    pub fn with_rational_coefficients(&self) -> Variety {
        if self.ring.mode() == CoeffMode::Rational {
            return self.clone();
        }
        let ring = self.ring.with_mode(CoeffMode::Rational);
        let convert = |c: &RingClass| ring.convert_mode(c).expect("same stage structure");
        let tangent = self
            .tangent
            .iter()
            .map(|f| match f {
                TangentFactor::LineClass(c) => TangentFactor::LineClass(convert(c)),
                TangentFactor::NegLineClass(c) => TangentFactor::NegLineClass(convert(c)),
                TangentFactor::TwistedBlock { chern, rank, twist } => {
                    TangentFactor::TwistedBlock {
                        chern: convert(chern),
                        rank: *rank,
                        twist: convert(twist),
                    }
                }
            })
            .collect();
        Variety {
            name: self.name.clone(),
            ring,
            tangent,
            dim: self.dim,
        }
    }

    pub fn rename(mut self, name: &str) -> Variety {
        self.name = name.to_string();
        self
    }
}

/// Line list defining X(i, j) over BF_i, in attachment order.
fn x_line_list(base: &Variety, i: u32, j: u32) -> Result<Vec<RingClass>> {
    let mut lines: Vec<RingClass> = Vec::new();
    for _ in 0..(j - i) {
        lines.push(base.ring.zero());
    }
    for a in 1..=i {
        lines.push(beta_star_c1(&base.ring, a as usize)?);
    }
    if i >= 1 {
        lines.push(base.ring.generator(i as usize - 1));
    } else {
        lines.push(base.ring.zero());
    }
    Ok(lines)
}

/// c_1 of the conjugate complement line at stage `a` of a bounded flag
/// tower: t_(a-1) - t_a, with t_0 = 0. This is the one place the Whitney
/// identity beta_a + beta*_a = beta_(a-1) + trivial enters numerically.
fn beta_star_c1(ring: &TowerRing, a: usize) -> Result<RingClass> {
    let ta = ring.generator(a - 1);
    let prev = if a >= 2 { ring.generator(a - 2) } else { ring.zero() };
    prev.sub(&ta)
}

fn embed_factor(ring: &TowerRing, f: &TangentFactor) -> Result<TangentFactor> {
    embed_factor_at(ring, f, 0)
}

fn embed_factor_at(ring: &TowerRing, f: &TangentFactor, offset: usize) -> Result<TangentFactor> {
    Ok(match f {
        TangentFactor::LineClass(c) => TangentFactor::LineClass(ring.embed_at(c, offset)?),
        TangentFactor::NegLineClass(c) => TangentFactor::NegLineClass(ring.embed_at(c, offset)?),
        TangentFactor::TwistedBlock { chern, rank, twist } => TangentFactor::TwistedBlock {
            chern: ring.embed_at(chern, offset)?,
            rank: *rank,
            twist: ring.embed_at(twist, offset)?,
        },
    })
}
