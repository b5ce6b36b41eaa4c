//! Embedding verdicts for bounded-fiber ALFs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alf::{Alf, AlfSpec};
use crate::error::{Error, Result};
use crate::spin::{spin_status, SpinStatus};
use crate::word::{Curve, TwistWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Embeds,
    Obstructed,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Embeds => "embeds",
            Verdict::Obstructed => "obstructed",
            Verdict::Unknown => "unknown",
        }
    }
}

pub const CITE_S2S2: &str =
    "Theorem 1.1: every LF(Σ, φ) admits a relative LF embedding in (S²×S²∖D⁴)×D²";
pub const CITE_HYPERELLIPTIC: &str =
    "Theorem 1.3(2): hyperelliptic monodromy gives a relative LF embedding in D⁶";
pub const CITE_SPIN: &str =
    "Theorem 1.3(1): a proper embedding in D⁶ forces the total space to be spin";
pub const CITE_DOUBLE: &str = "Obstruction: proper embedding in D⁶ ⟹ double embeds in S⁶ ⟹ double embeds in ℝ⁶ ⟹ double is spin; the double is tested with the Stipsicz criterion";
pub const CITE_COROLLARY: &str =
    "Corollary 1.2 (context, not computed): every closed orientable 4-manifold embeds in S²×S²×S²";

/// Outcome of [`classify`]. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub input: AlfSpec,
    #[serde(rename = "s2s2xd2")]
    pub ambient_s2s2: Verdict,
    #[serde(rename = "d6")]
    pub d6_verdict: Verdict,
    pub hyperelliptic: bool,
    pub double_spin: SpinStatus,
    #[serde(rename = "citations")]
    pub notes: Vec<String>,
}

/// Syntactic membership in the hyperelliptic subgroup: the word uses only
/// Humphreys generators other than `b2`.
pub fn is_hyperelliptic_word(word: &TwistWord) -> bool {
    word.letters()
        .iter()
        .all(|l| l.curve.is_humphreys() && l.curve != Curve::B(2))
}

/// Applies the embedding theorems to an ALF over `Σ_{g,1}`.
pub fn classify(alf: &Alf, brute_bound: usize) -> Result<EmbeddingReport> {
    let fiber = alf.fiber();
    if fiber.boundary_components() != 1 {
        return Err(Error::NeedsOneBoundary(fiber.boundary_components()));
    }
    let hyperelliptic = is_hyperelliptic_word(alf.word());
    let double_spin = spin_status(&alf.double()?, brute_bound)?;

    let mut notes = vec![CITE_S2S2.to_string()];
    let d6_verdict = if hyperelliptic {
        if !double_spin.spin {
            return Err(Error::Inconsistency(format!(
                "hyperelliptic word {} has a non-spin double",
                alf.word()
            )));
        }
        notes.push(CITE_HYPERELLIPTIC.to_string());
        Verdict::Embeds
    } else if !double_spin.spin {
        notes.push(CITE_SPIN.to_string());
        notes.push(CITE_DOUBLE.to_string());
        Verdict::Obstructed
    } else {
        Verdict::Unknown
    };
    notes.push(CITE_COROLLARY.to_string());

    Ok(EmbeddingReport {
        input: alf.to_spec(),
        ambient_s2s2: Verdict::Embeds,
        d6_verdict,
        hyperelliptic,
        double_spin,
        notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Deterministic rendering; JSON is a single line.
pub fn report_render(report: &EmbeddingReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("report serializes"),
        Format::Text => render_text(report),
    }
}

fn render_text(r: &EmbeddingReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "LF(Σ_{{{},{}}}, {})",
        r.input.genus, r.input.boundary, r.input.word
    );
    let _ = writeln!(
        out,
        "  (S²×S²∖D⁴)×D²: {}  [Theorem 1.1]",
        r.ambient_s2s2.as_str()
    );
    let reason = match r.d6_verdict {
        Verdict::Embeds => "  [Theorem 1.3(2): hyperelliptic monodromy]",
        Verdict::Obstructed => "  [Theorem 1.3(1) applied to the double: not spin]",
        Verdict::Unknown => "  [no applicable theorem for this presentation]",
    };
    let _ = writeln!(out, "  D⁶: {}{reason}", r.d6_verdict.as_str());
    let _ = writeln!(out, "  hyperelliptic presentation: {}", r.hyperelliptic);
    let spin = if r.double_spin.spin {
        "spin"
    } else {
        "not spin"
    };
    let method = serde_json::to_value(r.double_spin.method).expect("method serializes");
    let _ = writeln!(
        out,
        "  double Σ_{{{},0}}: {spin} (method: {})",
        2 * r.input.genus,
        method.as_str().unwrap_or_default()
    );
    if let Some(w) = &r.double_spin.witness {
        let letters = r.input.word.letters();
        let name = |i: usize| format!("{}#{}", letters[i].curve, i + 1);
        let subset: Vec<String> = w.subset.iter().map(|&i| name(i)).collect();
        let _ = writeln!(
            out,
            "  witness: {{{}}} sums to {} with even parity",
            subset.join(", "),
            name(w.target)
        );
    }
    for note in &r.notes {
        let _ = writeln!(out, "  - {note}");
    }
    out
}
