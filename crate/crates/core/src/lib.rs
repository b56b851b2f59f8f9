//! Exact-arithmetic engine for cohomology rings of towers of projective
//! bundles (bounded flag manifolds, Bott towers and their relatives), their
//! characteristic numbers, and the number theory behind the Milnor-number
//! criterion for multiplicative generators of the unitary cobordism ring.

pub mod charnum;
pub mod cobordism;
pub mod error;
pub mod residues;
pub mod ring;
pub mod scalar;
pub mod variety;

pub use error::{Error, Result};
pub use ring::{Generator, RingClass, Stage, TowerRing};
pub use scalar::{CoeffMode, Scalar};
pub use variety::{TangentFactor, Variety};
