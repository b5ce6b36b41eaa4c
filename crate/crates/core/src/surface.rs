//! Standard fibers, the Humphreys curve system and doubling.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::HClass;
use crate::word::Curve;

/// The compact oriented surface of genus `g` with `m` boundary components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceFiber {
    genus: usize,
    boundary: usize,
}

impl SurfaceFiber {
    /// Construction is total; operations that need homology validate `m`.
    pub fn standard(genus: usize, boundary: usize) -> Self {
        Self { genus, boundary }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary_components(&self) -> usize {
        self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    /// Rank of the modelled first homology; `2g` for `m <= 1`.
    pub fn h1_rank(&self) -> usize {
        2 * self.genus
    }

    /// Rejects fibers whose homology is outside the model (`m >= 2`).
    pub fn check_homology(&self) -> Result<()> {
        if self.boundary > 1 {
            Err(Error::TooManyBoundaryComponents(self.boundary))
        } else {
            Ok(())
        }
    }

    /// Basis label of coordinate `i` in the order (α1, β1, α2, β2, ...).
    pub fn basis_label(&self, i: usize) -> String {
        let kind = if i.is_multiple_of(2) { "alpha" } else { "beta" };
        format!("{kind}{}", i / 2 + 1)
    }
}

impl fmt::Display for SurfaceFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Σ_{{{},{}}}", self.genus, self.boundary)
    }
}

/// A named Humphreys generator together with its homology class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCurve {
    pub name: Curve,
    pub class: HClass,
}

/// The Humphreys curves of a fiber, their fixed homology model, and the
/// geometric intersection counts between them.
///
/// Homology model in the basis (α1, β1, ..., αg, βg):
/// `[a_i] = α_i`, `[b_1] = β_1`, `[b_2] = β_2`, `[c_i] = β_i + β_{i+1}`.
/// Geometrically the curves form the chain `b1 - a1 - c1 - a2 - ... - ag`
/// with `b2` meeting only `a2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSystem {
    fiber: SurfaceFiber,
    curves: Vec<GeneratorCurve>,
    adjacency: Vec<Vec<u32>>,
}

/// Curve names in system order: `a1, b1, c1, a2, b2, c2, a3, c3, ..., ag`.
fn humphreys_names(genus: usize) -> Vec<Curve> {
    let mut names = Vec::with_capacity(2 * genus + 1);
    for k in 1..=genus {
        names.push(Curve::A(k));
        if k == 1 || (k == 2 && genus >= 2) {
            names.push(Curve::B(k));
        }
        if k < genus {
            names.push(Curve::C(k));
        }
    }
    names
}

/// Pairs of curves meeting geometrically once.
fn humphreys_edges(genus: usize) -> Vec<(Curve, Curve)> {
    let mut chain = vec![Curve::B(1), Curve::A(1)];
    for k in 1..genus {
        chain.push(Curve::C(k));
        chain.push(Curve::A(k + 1));
    }
    let mut edges: Vec<_> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    if genus >= 2 {
        edges.push((Curve::B(2), Curve::A(2)));
    }
    edges
}

impl CurveSystem {
    pub fn fiber(&self) -> SurfaceFiber {
        self.fiber
    }

    pub fn curves(&self) -> &[GeneratorCurve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn index_of(&self, name: Curve) -> Option<usize> {
        self.curves.iter().position(|c| c.name == name)
    }

    pub fn get(&self, name: Curve) -> Option<&GeneratorCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// Geometric intersection count between two named curves.
    pub fn adjacency(&self, x: Curve, y: Curve) -> Option<u32> {
        Some(self.adjacency[self.index_of(x)?][self.index_of(y)?])
    }

    pub fn adjacency_table(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    /// Homology class of any curve name valid on this fiber, including
    /// separating curves (class zero).
    pub fn class_of(&self, name: Curve) -> Result<HClass> {
        if let Curve::S(k) = name {
            return if (1..=self.fiber.genus).contains(&k) {
                Ok(HClass::zero(self.fiber))
            } else {
                Err(self.invalid(name))
            };
        }
        self.get(name)
            .map(|c| c.class.clone())
            .ok_or_else(|| self.invalid(name))
    }

    fn invalid(&self, name: Curve) -> Error {
        Error::InvalidCurve {
            curve: name.to_string(),
            genus: self.fiber.genus,
        }
    }
}

/// Builds the Humphreys system on `Σ_{g,m}` for `g >= 1`, `m <= 1`.
pub fn humphreys_system(fiber: SurfaceFiber) -> Result<CurveSystem> {
    fiber.check_homology()?;
    let g = fiber.genus();
    if g == 0 {
        return Err(Error::GenusTooSmall(g));
    }
    let curves: Vec<_> = humphreys_names(g)
        .into_iter()
        .map(|name| {
            let mut coords = vec![0i64; 2 * g];
            match name {
                Curve::A(k) => coords[2 * (k - 1)] = 1,
                Curve::B(k) => coords[2 * (k - 1) + 1] = 1,
                Curve::C(k) => {
                    coords[2 * (k - 1) + 1] = 1;
                    coords[2 * k + 1] = 1;
                }
                Curve::S(_) => unreachable!("separating curves are not generators"),
            }
            GeneratorCurve {
                name,
                class: HClass::new_unchecked(fiber, coords),
            }
        })
        .collect();

    let n = curves.len();
    let mut adjacency = vec![vec![0u32; n]; n];
    let position = |c: Curve| curves.iter().position(|x| x.name == c).unwrap();
    for (x, y) in humphreys_edges(g) {
        let (i, j) = (position(x), position(y));
        adjacency[i][j] = 1;
        adjacency[j][i] = 1;
    }
    Ok(CurveSystem {
        fiber,
        curves,
        adjacency,
    })
}

/// Homology inclusion `H1(Σ_{g,1}) -> H1(Σ_{2g})` padding with zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inclusion {
    source: SurfaceFiber,
    target: SurfaceFiber,
}

impl Inclusion {
    pub fn source(&self) -> SurfaceFiber {
        self.source
    }

    pub fn target(&self) -> SurfaceFiber {
        self.target
    }

    pub fn apply(&self, x: &HClass) -> Result<HClass> {
        if x.fiber() != self.source {
            return Err(Error::FiberMismatch(x.fiber(), self.source));
        }
        let mut coords = x.coords().to_vec();
        coords.resize(self.target.h1_rank(), 0);
        Ok(HClass::new_unchecked(self.target, coords))
    }
}

/// The double of `Σ_{g,1}`: the closed surface `Σ_{2g}`, with the original
/// handles occupying the first `2g` basis coordinates.
pub fn double_surface(fiber: SurfaceFiber) -> Result<(SurfaceFiber, Inclusion)> {
    if fiber.boundary_components() != 1 {
        return Err(Error::NeedsOneBoundary(fiber.boundary_components()));
    }
    if fiber.genus() == 0 {
        return Err(Error::GenusTooSmall(0));
    }
    let target = SurfaceFiber::standard(2 * fiber.genus(), 0);
    Ok((
        target,
        Inclusion {
            source: fiber,
            target,
        },
    ))
}
