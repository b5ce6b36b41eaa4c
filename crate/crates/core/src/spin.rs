//! The Stipsicz criterion for closed-fiber Lefschetz fibrations.
//!
//! `X` is not spin iff some vanishing cycles `v_1..v_k` sum (mod 2) to another
//! vanishing cycle `v` with `k + Σ_{i<j} v_i·v_j ≡ 0`. Moving `v` into the
//! subset turns this into: some nonempty set `T` of letters has zero mod-2
//! sum and `|T| + Σ_{i<j∈T} v_i·v_j ≡ 1`. Two independent deciders are
//! provided: exhaustive subset enumeration, and solvability of the linear
//! system `q(v_i) = 1` for a quadratic refinement `q` of the intersection
//! form on the span of the cycles.

use serde::{Deserialize, Serialize};

use crate::alf::Alf;
use crate::error::{Error, Result};
use crate::gf2::{gf2_solve, Gf2Matrix, Gf2Solution, Gf2Vec};

pub const DEFAULT_BRUTE_BOUND: usize = 20;

/// A non-spin certificate: the classes of `subset` sum to the class of
/// `target`, and `|subset| + Σ pairings ≡ 0`. Indices are 0-based letter
/// positions; on the wire they are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WitnessRepr", try_from = "WitnessRepr")]
pub struct SpinWitness {
    pub subset: Vec<usize>,
    pub target: usize,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    subset: Vec<usize>,
    target: usize,
}

impl From<SpinWitness> for WitnessRepr {
    fn from(w: SpinWitness) -> Self {
        Self {
            subset: w.subset.iter().map(|i| i + 1).collect(),
            target: w.target + 1,
        }
    }
}

impl TryFrom<WitnessRepr> for SpinWitness {
    type Error = String;

    fn try_from(r: WitnessRepr) -> std::result::Result<Self, String> {
        let dec = |i: usize| i.checked_sub(1).ok_or("letter positions are 1-based");
        Ok(Self {
            subset: r
                .subset
                .into_iter()
                .map(dec)
                .collect::<std::result::Result<_, _>>()?,
            target: dec(r.target)?,
        })
    }
}

impl SpinWitness {
    /// Splits a zero-sum set (sorted) into subset and its largest element.
    fn from_zero_sum(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        let target = members.pop().expect("zero-sum set is nonempty");
        Self {
            subset: members,
            target,
        }
    }

    pub fn parity(&self, classes: &[Gf2Vec]) -> Result<u8> {
        stipsicz_parity(&self.subset, classes)
    }

    /// Re-checks the certificate from scratch.
    pub fn is_valid_for(&self, classes: &[Gf2Vec]) -> bool {
        let Some(target) = classes.get(self.target) else {
            return false;
        };
        if self.subset.contains(&self.target) {
            return false;
        }
        let Ok(parity) = self.parity(classes) else {
            return false;
        };
        let sum = self
            .subset
            .iter()
            .fold(Gf2Vec::zeros(target.len()), |acc, &i| acc ^ &classes[i]);
        parity == 0 && &sum == target
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Both,
    Linear,
    Brute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinStatus {
    pub spin: bool,
    pub witness: Option<SpinWitness>,
    pub method: Method,
}

impl SpinStatus {
    fn from_witness(witness: Option<SpinWitness>, method: Method) -> Self {
        Self {
            spin: witness.is_none(),
            witness,
            method,
        }
    }
}

/// `|S| + Σ_{i<j∈S} ⟨v_i, v_j⟩ mod 2`.
pub fn stipsicz_parity(subset: &[usize], classes: &[Gf2Vec]) -> Result<u8> {
    for (n, &i) in subset.iter().enumerate() {
        if i >= classes.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: classes.len(),
            });
        }
        if subset[..n].contains(&i) {
            return Err(Error::DuplicateIndex(i));
        }
    }
    let mut parity = subset.len() % 2;
    for (n, &i) in subset.iter().enumerate() {
        for &j in &subset[n + 1..] {
            parity ^= classes[i].symplectic(&classes[j]) as usize;
        }
    }
    Ok(parity as u8)
}

/// Exhaustive search over all letter subsets in Gray-code order. Returns the
/// witness whose letter set has the smallest bitmask (bit `i` = letter `i`).
pub fn brute_force_witness(classes: &[Gf2Vec]) -> Option<SpinWitness> {
    let k = classes.len();
    assert!(k < 64, "brute force supports fewer than 64 letters");
    if k == 0 {
        return None;
    }
    let dim = classes[0].len();
    let odd_pairs: Vec<u64> = classes
        .iter()
        .map(|x| {
            classes
                .iter()
                .enumerate()
                .filter(|(_, y)| x.symplectic(y))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();

    let mut mask = 0u64;
    let mut sum = Gf2Vec::zeros(dim);
    let mut parity = 0u32;
    let mut best: Option<u64> = None;
    for step in 1u64..1 << k {
        let bit = step.trailing_zeros() as usize;
        let others = mask & !(1 << bit);
        parity ^= 1 ^ ((odd_pairs[bit] & others).count_ones() & 1);
        mask ^= 1 << bit;
        sum ^= &classes[bit];
        if parity == 1 && sum.is_zero() && best.is_none_or(|b| mask < b) {
            best = Some(mask);
        }
    }
    best.map(|m| SpinWitness::from_zero_sum((0..k).filter(|i| m >> i & 1 == 1).collect()))
}

/// Decides the criterion via a GF(2) linear system for a quadratic
/// refinement taking the value 1 on every cycle.
pub fn linear_witness(classes: &[Gf2Vec]) -> Option<SpinWitness> {
    let dim = classes.first().map(Gf2Vec::len)?;

    // Greedy basis of the span, drawn from the cycles themselves.
    let mut basis: Vec<usize> = Vec::new();
    let mut coords: Vec<Gf2Vec> = Vec::with_capacity(classes.len());
    for (i, v) in classes.iter().enumerate() {
        let span = Gf2Matrix::from_rows(
            basis.len(),
            (0..dim)
                .map(|r| Gf2Vec::from_bits(basis.iter().map(|&b| classes[b].get(r))))
                .collect(),
        );
        match gf2_solve(&span, v) {
            Gf2Solution::Solution(c) => coords.push(c),
            Gf2Solution::Inconsistent(_) => {
                basis.push(i);
                coords.push(Gf2Vec::zeros(0));
            }
        }
    }
    let r = basis.len();
    // Letters processed before the basis was complete carry shorter vectors.
    let coords: Vec<Gf2Vec> = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| match basis.iter().position(|&b| b == i) {
            Some(p) => Gf2Vec::unit(r, p),
            None => {
                let mut full = Gf2Vec::zeros(r);
                for j in c.ones() {
                    full.set(j, true);
                }
                full
            }
        })
        .collect();

    // q(Σ_{b∈c} e_b) = Σ q(e_b) + Σ_{b<b'∈c} ⟨e_b, e_b'⟩ must equal 1.
    let rhs = Gf2Vec::from_bits(coords.iter().map(|c| {
        let members: Vec<usize> = c.ones().map(|p| basis[p]).collect();
        let mut bit = true;
        for (n, &x) in members.iter().enumerate() {
            for &y in &members[n + 1..] {
                bit ^= classes[x].symplectic(&classes[y]);
            }
        }
        bit
    }));
    match gf2_solve(&Gf2Matrix::from_rows(r, coords), &rhs) {
        Gf2Solution::Solution(_) => None,
        Gf2Solution::Inconsistent(rows) => Some(SpinWitness::from_zero_sum(rows)),
    }
}

fn closed_classes(alf: &Alf) -> Result<Vec<Gf2Vec>> {
    let fiber = alf.fiber();
    if !fiber.is_closed() {
        return Err(Error::NeedsClosedFiber(fiber.boundary_components()));
    }
    Ok(alf.vanishing_classes().iter().map(|c| c.mod2()).collect())
}

pub fn not_spin_bruteforce(alf: &Alf, bound: usize) -> Result<SpinStatus> {
    let classes = closed_classes(alf)?;
    if classes.len() > bound.min(63) {
        return Err(Error::BruteForceBound {
            letters: classes.len(),
            bound,
        });
    }
    Ok(SpinStatus::from_witness(
        brute_force_witness(&classes),
        Method::Brute,
    ))
}

pub fn not_spin_linear(alf: &Alf) -> Result<SpinStatus> {
    let classes = closed_classes(alf)?;
    Ok(SpinStatus::from_witness(
        linear_witness(&classes),
        Method::Linear,
    ))
}

/// Runs the linear decider, and the brute-force one as well when the word
/// has at most `bound` letters. Disagreement or an invalid witness is
/// reported as [`Error::Inconsistency`].
pub fn spin_status(alf: &Alf, bound: usize) -> Result<SpinStatus> {
    let classes = closed_classes(alf)?;
    let linear = linear_witness(&classes);
    check_witness(&linear, &classes, "linear")?;
    if classes.len() > bound.min(63) {
        return Ok(SpinStatus::from_witness(linear, Method::Linear));
    }
    let brute = brute_force_witness(&classes);
    check_witness(&brute, &classes, "brute-force")?;
    if brute.is_some() != linear.is_some() {
        return Err(Error::Inconsistency(format!(
            "spin deciders disagree on {}: brute force says {}, linear says {}",
            alf.word(),
            verdict(&brute),
            verdict(&linear)
        )));
    }
    Ok(SpinStatus::from_witness(brute, Method::Both))
}

fn verdict(w: &Option<SpinWitness>) -> &'static str {
    if w.is_some() {
        "non-spin"
    } else {
        "spin"
    }
}

fn check_witness(w: &Option<SpinWitness>, classes: &[Gf2Vec], who: &str) -> Result<()> {
    match w {
        Some(w) if !w.is_valid_for(classes) => Err(Error::Inconsistency(format!(
            "{who} decider produced an invalid witness {w:?}"
        ))),
        _ => Ok(()),
    }
}
