//! First homology of the fiber: classes, the intersection form, and the
//! action of Dehn twists.
//!
//! Sign convention: `⟨α_i, β_i⟩ = +1`, and a positive twist along `c` acts by
//! the transvection `x ↦ x + ⟨x, c⟩ c`. A negative twist uses `-⟨x, c⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::matrix::IntMatrix;
use crate::surface::{CurveSystem, SurfaceFiber};
use crate::word::{Chirality, TwistWord};

/// An integral class in `H1(fiber)` in the basis (α1, β1, α2, β2, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HClass {
    fiber: SurfaceFiber,
    coords: Vec<i64>,
}

impl HClass {
    pub fn new(fiber: SurfaceFiber, coords: Vec<i64>) -> Result<Self> {
        fiber.check_homology()?;
        if coords.len() != fiber.h1_rank() {
            return Err(Error::LengthMismatch {
                expected: fiber.h1_rank(),
                got: coords.len(),
            });
        }
        Ok(Self { fiber, coords })
    }

    pub(crate) fn new_unchecked(fiber: SurfaceFiber, coords: Vec<i64>) -> Self {
        debug_assert_eq!(coords.len(), fiber.h1_rank());
        Self { fiber, coords }
    }

    pub fn zero(fiber: SurfaceFiber) -> Self {
        Self::new_unchecked(fiber, vec![0; fiber.h1_rank()])
    }

    /// Lifts a mod-2 class to its 0/1 integer representative.
    pub fn from_mod2(fiber: SurfaceFiber, v: &Gf2Vec) -> Result<Self> {
        Self::new(fiber, v.to_bits().into_iter().map(i64::from).collect())
    }

    pub fn fiber(&self) -> SurfaceFiber {
        self.fiber
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn mod2(&self) -> Gf2Vec {
        Gf2Vec::from_bits(self.coords.iter().map(|c| c.rem_euclid(2) == 1))
    }

    fn same_fiber(&self, other: &Self) -> Result<()> {
        if self.fiber != other.fiber {
            Err(Error::FiberMismatch(self.fiber, other.fiber))
        } else {
            Ok(())
        }
    }
}

impl Serialize for HClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// The standard symplectic form `J`, block diagonal with `[[0,1],[-1,0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionForm {
    genus: usize,
}

impl IntersectionForm {
    pub fn new(genus: usize) -> Self {
        Self { genus }
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(2 * self.genus, 2 * self.genus, |i, j| {
            if i / 2 != j / 2 {
                0
            } else if i % 2 == 0 && j == i + 1 {
                1
            } else if i % 2 == 1 && j + 1 == i {
                -1
            } else {
                0
            }
        })
    }

    /// `xᵀ J y` on raw coordinate slices.
    pub fn evaluate(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        assert_eq!(x.len(), 2 * self.genus);
        assert_eq!(y.len(), 2 * self.genus);
        x.chunks(2).zip(y.chunks(2)).try_fold(0i64, |acc, (a, b)| {
            let block = a[0]
                .checked_mul(b[1])
                .zip(a[1].checked_mul(b[0]))
                .and_then(|(p, q)| p.checked_sub(q))
                .ok_or(Error::Overflow)?;
            acc.checked_add(block).ok_or(Error::Overflow)
        })
    }
}

/// Algebraic intersection number `⟨x, y⟩ = xᵀ J y`.
pub fn intersection(x: &HClass, y: &HClass) -> Result<i64> {
    x.same_fiber(y)?;
    IntersectionForm::new(x.fiber.genus()).evaluate(&x.coords, &y.coords)
}

fn transvect(c: &[i64], chirality: Chirality, x: &mut [i64], form: IntersectionForm) -> Result<()> {
    let k = form.evaluate(x, c)?;
    if k == 0 {
        return Ok(());
    }
    let k = k.checked_mul(chirality.sign()).ok_or(Error::Overflow)?;
    for (xi, ci) in x.iter_mut().zip(c) {
        *xi = k
            .checked_mul(*ci)
            .and_then(|d| xi.checked_add(d))
            .ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Image of `x` under the twist along a curve of class `c`.
pub fn twist_action(c: &HClass, chirality: Chirality, x: &HClass) -> Result<HClass> {
    c.same_fiber(x)?;
    let mut coords = x.coords.clone();
    transvect(
        &c.coords,
        chirality,
        &mut coords,
        IntersectionForm::new(x.fiber.genus()),
    )?;
    Ok(HClass::new_unchecked(x.fiber, coords))
}

/// Matrix of the induced map on `H1(fiber)`; columns are images of basis
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ActionMatrix {
    #[serde(skip)]
    fiber: SurfaceFiber,
    entries: IntMatrix,
}

impl ActionMatrix {
    pub fn identity(fiber: SurfaceFiber) -> Self {
        Self {
            fiber,
            entries: IntMatrix::identity(fiber.h1_rank()),
        }
    }

    pub fn fiber(&self) -> SurfaceFiber {
        self.fiber
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries == IntMatrix::identity(self.fiber.h1_rank())
    }

    pub fn apply(&self, x: &HClass) -> Result<HClass> {
        if x.fiber != self.fiber {
            return Err(Error::FiberMismatch(x.fiber, self.fiber));
        }
        let col = IntMatrix::from_columns(x.coords.len(), std::slice::from_ref(&x.coords));
        Ok(HClass::new_unchecked(
            self.fiber,
            self.entries.checked_mul(&col)?.column(0),
        ))
    }

    /// `Mᵀ J M = J`.
    pub fn preserves_form(&self) -> Result<bool> {
        let j = IntersectionForm::new(self.fiber.genus()).matrix();
        let m = &self.entries;
        Ok(m.transpose().checked_mul(&j)?.checked_mul(m)? == j)
    }

    /// Left-multiplies by the transvection along `c`.
    fn twist(&mut self, c: &HClass, chirality: Chirality) -> Result<()> {
        let n = self.fiber.h1_rank();
        let form = IntersectionForm::new(self.fiber.genus());
        for j in 0..n {
            let mut col = self.entries.column(j);
            transvect(c.coords(), chirality, &mut col, form)?;
            for (i, v) in col.into_iter().enumerate() {
                *self.entries.get_mut(i, j) = v;
            }
        }
        Ok(())
    }
}

/// Composite action of twists along the given classes, first entry applied
/// first.
pub fn action_of_cycles<'a, I>(fiber: SurfaceFiber, cycles: I) -> Result<ActionMatrix>
where
    I: IntoIterator<Item = (&'a HClass, Chirality)>,
{
    fiber.check_homology()?;
    let mut m = ActionMatrix::identity(fiber);
    for (c, chirality) in cycles {
        if c.fiber != fiber {
            return Err(Error::FiberMismatch(c.fiber, fiber));
        }
        m.twist(c, chirality)?;
    }
    Ok(m)
}

/// Homology action of a twist word; the leftmost letter acts first.
pub fn word_action(system: &CurveSystem, word: &TwistWord) -> Result<ActionMatrix> {
    let classes = word
        .letters()
        .iter()
        .map(|l| system.class_of(l.curve))
        .collect::<Result<Vec<_>>>()?;
    action_of_cycles(
        system.fiber(),
        classes
            .iter()
            .zip(word.letters().iter().map(|l| l.chirality)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::BigMatrix;
    use crate::surface::humphreys_system;
    use num_bigint::BigInt;

    fn fiber(g: usize) -> SurfaceFiber {
        SurfaceFiber::standard(g, 1)
    }

    fn class(g: usize, c: &[i64]) -> HClass {
        HClass::new(fiber(g), c.to_vec()).unwrap()
    }

    #[test]
    fn basic_pairings() {
        assert_eq!(intersection(&class(1, &[1, 0]), &class(1, &[0, 1])), Ok(1));
        assert_eq!(
            intersection(&class(2, &[0, 1, 0, 0]), &class(2, &[0, 1, 0, 1])),
            Ok(0)
        );
        let x = class(2, &[3, -1, 4, 2]);
        assert_eq!(intersection(&x, &x), Ok(0));
    }

    #[test]
    fn mismatched_fibers() {
        let x = class(1, &[1, 0]);
        let y = HClass::new(SurfaceFiber::standard(1, 0), vec![0, 1]).unwrap();
        assert!(matches!(
            intersection(&x, &y),
            Err(Error::FiberMismatch(..))
        ));
    }

    #[test]
    fn form_is_unimodular() {
        for g in 1..=5 {
            let j: BigMatrix = IntersectionForm::new(g).matrix().to_big();
            assert_eq!(j.determinant(), BigInt::from(1));
            assert_eq!(j.transpose(), j.map(|x| -x));
        }
    }

    #[test]
    fn twist_a1_on_b1() {
        let y = twist_action(&class(1, &[1, 0]), Chirality::Positive, &class(1, &[0, 1])).unwrap();
        assert_eq!(y.coords(), &[-1, 1]);
    }

    #[test]
    fn twist_fixes_its_curve_and_inverts() {
        let c = class(2, &[0, 1, 0, 1]);
        assert_eq!(twist_action(&c, Chirality::Positive, &c).unwrap(), c);
        let x = class(2, &[2, -3, 1, 5]);
        let y = twist_action(&c, Chirality::Positive, &x).unwrap();
        assert_eq!(twist_action(&c, Chirality::Negative, &y).unwrap(), x);
    }

    #[test]
    fn word_actions() {
        let sys = humphreys_system(fiber(1)).unwrap();
        let id = word_action(&sys, &"id".parse().unwrap()).unwrap();
        assert!(id.is_identity());
        let cancel = word_action(&sys, &"a1 a1^-1".parse().unwrap()).unwrap();
        assert!(cancel.is_identity());

        // T_a1 = [[1,-1],[0,1]], T_b1 = [[1,0],[1,1]]; "a1 b1" is T_b1·T_a1.
        let m = word_action(&sys, &"a1 b1".parse().unwrap()).unwrap();
        let expected = IntMatrix::from_rows(vec![vec![1, -1], vec![1, 0]]).unwrap();
        assert_eq!(m.entries(), &expected);
        assert!(m.preserves_form().unwrap());
    }

    #[test]
    fn unknown_curve_rejected() {
        let sys = humphreys_system(fiber(1)).unwrap();
        assert!(matches!(
            word_action(&sys, &"c1".parse().unwrap()),
            Err(Error::InvalidCurve { .. })
        ));
    }
}
