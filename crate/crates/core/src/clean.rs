//! Moving a mod-2 class off the β-coordinates by a short twist word.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::surface::CurveSystem;
use crate::word::{Chirality, Letter, TwistWord};

pub const DEFAULT_MAX_LEN: usize = 16;

/// True when every β-coordinate of `v` vanishes, i.e. `v ∈ span(α_1..α_g)`.
pub fn is_clean(v: &Gf2Vec) -> bool {
    v.ones().all(|i| i % 2 == 0)
}

/// Mod-2 transvection `x ↦ x + ⟨x, c⟩ c`. Both chiralities agree mod 2.
pub fn transvect_mod2(c: &Gf2Vec, x: &Gf2Vec) -> Gf2Vec {
    if x.symplectic(c) {
        x.clone() ^ c
    } else {
        x.clone()
    }
}

/// Applies a word to a mod-2 class, leftmost letter first.
pub fn apply_word_mod2(system: &CurveSystem, word: &TwistWord, v: &Gf2Vec) -> Result<Gf2Vec> {
    word.letters().iter().try_fold(v.clone(), |x, l| {
        Ok(transvect_mod2(&system.class_of(l.curve)?.mod2(), &x))
    })
}

/// Breadth-first search for the shortest word (ties broken by curve index,
/// then `+1` before `-1`) whose action carries `v` into `span(α)`.
pub fn clean_class(v: &Gf2Vec, system: &CurveSystem, max_len: usize) -> Result<TwistWord> {
    let n = system.fiber().h1_rank();
    if v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: v.len(),
        });
    }
    if is_clean(v) {
        return Ok(TwistWord::identity());
    }

    let moves: Vec<(Letter, Gf2Vec)> = system
        .curves()
        .iter()
        .flat_map(|c| {
            let class = c.class.mod2();
            [Chirality::Positive, Chirality::Negative]
                .map(|ch| (Letter::new(c.name, ch), class.clone()))
        })
        .collect();

    // state -> (predecessor, letter, depth)
    let mut parent: HashMap<Gf2Vec, Option<(Gf2Vec, Letter)>> = HashMap::new();
    parent.insert(v.clone(), None);
    let mut queue = VecDeque::from([(v.clone(), 0usize)]);

    while let Some((state, depth)) = queue.pop_front() {
        if depth == max_len {
            continue;
        }
        for (letter, class) in &moves {
            let next = transvect_mod2(class, &state);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((state.clone(), *letter)));
            if is_clean(&next) {
                return Ok(trace_back(&parent, next));
            }
            queue.push_back((next, depth + 1));
        }
    }
    Err(Error::SearchBound(max_len))
}

fn trace_back(parent: &HashMap<Gf2Vec, Option<(Gf2Vec, Letter)>>, mut state: Gf2Vec) -> TwistWord {
    let mut letters = Vec::new();
    while let Some(Some((prev, letter))) = parent.get(&state) {
        letters.push(*letter);
        state = prev.clone();
    }
    letters.reverse();
    TwistWord::new(letters)
}
