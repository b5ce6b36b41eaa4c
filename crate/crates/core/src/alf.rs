//! Achiral Lefschetz fibrations over the disk and their homological data.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{action_of_cycles, ActionMatrix, HClass};
use crate::matrix::{BigMatrix, IntMatrix};
use crate::snf::smith_normal_form;
use crate::surface::{double_surface, humphreys_system, SurfaceFiber};
use crate::word::{Chirality, TwistWord};

/// Wire form of an ALF: `{"genus": g, "boundary": m, "word": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlfSpec {
    pub genus: usize,
    pub boundary: usize,
    pub word: TwistWord,
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl H1Report {
    /// Cokernel of an integer matrix, read off its Smith normal form.
    pub fn cokernel(m: &BigMatrix) -> Result<Self> {
        let snf = smith_normal_form(m);
        let torsion = snf
            .torsion()
            .iter()
            .map(|t| t.to_u64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            free_rank: m.nrows() - snf.rank(),
            torsion,
        })
    }
}

impl fmt::Display for H1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `LF(Σ, φ)`: a fiber and a monodromy factorization into twists along
/// vanishing cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alf {
    fiber: SurfaceFiber,
    word: TwistWord,
    cycles: Vec<HClass>,
}

/// Validates `word` against the Humphreys system of `fiber`.
pub fn make_alf(fiber: SurfaceFiber, word: TwistWord) -> Result<Alf> {
    let system = humphreys_system(fiber)?;
    let cycles = word
        .letters()
        .iter()
        .map(|l| system.class_of(l.curve))
        .collect::<Result<_>>()?;
    Ok(Alf {
        fiber,
        word,
        cycles,
    })
}

impl Alf {
    pub fn from_spec(spec: &AlfSpec) -> Result<Self> {
        make_alf(
            SurfaceFiber::standard(spec.genus, spec.boundary),
            spec.word.clone(),
        )
    }

    pub fn to_spec(&self) -> AlfSpec {
        AlfSpec {
            genus: self.fiber.genus(),
            boundary: self.fiber.boundary_components(),
            word: self.word.clone(),
        }
    }

    pub fn fiber(&self) -> SurfaceFiber {
        self.fiber
    }

    pub fn word(&self) -> &TwistWord {
        &self.word
    }

    /// Number of critical points.
    pub fn k(&self) -> usize {
        self.word.len()
    }

    /// Homology classes of the vanishing cycles, in word order.
    pub fn vanishing_classes(&self) -> &[HClass] {
        &self.cycles
    }

    pub fn chiralities(&self) -> impl Iterator<Item = Chirality> + '_ {
        self.word.letters().iter().map(|l| l.chirality)
    }

    /// `χ(Σ) + k`: one 2-handle per critical point on top of `D² × Σ`.
    pub fn euler_characteristic(&self) -> i64 {
        self.fiber.euler_characteristic() + self.k() as i64
    }

    /// `H1(V) = H1(Σ) / ⟨vanishing cycles⟩`.
    pub fn total_space_h1(&self) -> Result<H1Report> {
        let columns: Vec<Vec<i64>> = self.cycles.iter().map(|c| c.coords().to_vec()).collect();
        let m = IntMatrix::from_columns(self.fiber.h1_rank(), &columns);
        H1Report::cokernel(&m.to_big())
    }

    pub fn monodromy_action(&self) -> Result<ActionMatrix> {
        action_of_cycles(self.fiber, self.cycles.iter().zip(self.chiralities()))
    }

    /// The open book induced on `∂V`: same page, same monodromy.
    pub fn boundary_open_book(&self) -> Result<OpenBook> {
        if self.fiber.is_closed() {
            return Err(Error::NeedsBoundary);
        }
        Ok(OpenBook {
            page: self.fiber,
            monodromy: self.word.clone(),
        })
    }

    /// Caps `Σ_{g,1}` with a mirror copy and extends the monodromy by the
    /// identity. Letters keep their names; classes are padded.
    pub fn double(&self) -> Result<Alf> {
        let (closed, inclusion) = double_surface(self.fiber)?;
        let cycles = self
            .cycles
            .iter()
            .map(|c| inclusion.apply(c))
            .collect::<Result<_>>()?;
        Ok(Alf {
            fiber: closed,
            word: self.word.clone(),
            cycles,
        })
    }
}

/// Free-function forms of the [`Alf`] methods.
pub fn euler_characteristic(alf: &Alf) -> i64 {
    alf.euler_characteristic()
}

pub fn total_space_h1(alf: &Alf) -> Result<H1Report> {
    alf.total_space_h1()
}

pub fn boundary_open_book(alf: &Alf) -> Result<OpenBook> {
    alf.boundary_open_book()
}

pub fn double_alf(alf: &Alf) -> Result<Alf> {
    alf.double()
}

pub fn open_book_h1(ob: &OpenBook) -> Result<H1Report> {
    ob.h1()
}

/// An abstract open book `(page, monodromy)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenBook {
    pub page: SurfaceFiber,
    pub monodromy: TwistWord,
}

impl OpenBook {
    pub fn new(page: SurfaceFiber, monodromy: TwistWord) -> Result<Self> {
        if page.is_closed() {
            return Err(Error::NeedsBoundary);
        }
        Ok(Self { page, monodromy })
    }

    /// `H1(M) = coker(φ_* - I)` for a page with one binding component.
    pub fn h1(&self) -> Result<H1Report> {
        if self.page.boundary_components() != 1 {
            return Err(Error::NeedsOneBoundary(self.page.boundary_components()));
        }
        let action = make_alf(self.page, self.monodromy.clone())?.monodromy_action()?;
        let n = self.page.h1_rank();
        let m = action.entries().checked_sub(&IntMatrix::identity(n))?;
        H1Report::cokernel(&m.to_big())
    }
}

impl fmt::Display for OpenBook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ob({}, {})", self.page, self.monodromy)
    }
}
