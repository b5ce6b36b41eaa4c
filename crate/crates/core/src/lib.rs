//! Achiral Lefschetz fibrations over the disk, presented as signed Dehn-twist
//! words on a standard fiber.
//!
//! The crate computes the homology action of monodromy words, homological
//! invariants of the total space and of the boundary open book, decides the
//! Stipsicz spin criterion for closed-fiber fibrations, and turns all of that
//! into embedding verdicts in `D⁶` and `(S²×S²∖D⁴)×D²`.
//!
//! ```
//! use alfkit::{classify, make_alf, SurfaceFiber, Verdict, DEFAULT_BRUTE_BOUND};
//!
//! let alf = make_alf(SurfaceFiber::standard(2, 1), "b1 c1 b2".parse().unwrap()).unwrap();
//! let report = classify(&alf, DEFAULT_BRUTE_BOUND).unwrap();
//! assert_eq!(report.d6_verdict, Verdict::Obstructed);
//! ```

pub mod alf;
pub mod clean;
pub mod embedding;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod matrix;
pub mod snf;
pub mod spin;
pub mod surface;
pub mod word;

pub use alf::{make_alf, Alf, AlfSpec, H1Report, OpenBook};
pub use clean::{clean_class, DEFAULT_MAX_LEN};
pub use embedding::{
    classify, is_hyperelliptic_word, report_render, EmbeddingReport, Format, Verdict,
};
pub use error::{Error, Result};
pub use gf2::{gf2_solve, Gf2Matrix, Gf2Solution, Gf2Vec};
pub use homology::{
    intersection, twist_action, word_action, ActionMatrix, HClass, IntersectionForm,
};
pub use matrix::{BigMatrix, IntMatrix, Matrix};
pub use snf::{smith_normal_form, Snf};
pub use spin::{
    not_spin_bruteforce, not_spin_linear, spin_status, stipsicz_parity, Method, SpinStatus,
    SpinWitness, DEFAULT_BRUTE_BOUND,
};
pub use surface::{double_surface, humphreys_system, CurveSystem, GeneratorCurve, SurfaceFiber};
pub use word::{parse_word, Chirality, Curve, Letter, ParsedWord, TwistWord};
