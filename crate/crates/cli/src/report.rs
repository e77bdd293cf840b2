use std::fmt::Write as _;

use k3bott::k3::{
    bott_verdict, euler_char_line_bundle, euler_char_omega_twist, propagate_multiples, BottVanishing,
    Propagation, Reason, Status,
};
use k3bott::positivity::{find_low_degree_elliptic, EllipticPencil};
use k3bott::DivisorClass;
use serde::{Deserialize, Serialize};

use crate::spec::{InputError, SurfaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedData {
    pub rank: usize,
    pub signature: [usize; 2],
    pub line_bundle: DivisorClass,
    pub b_squared: i64,
    pub primitive: bool,
    pub euler_line_bundle: i64,
    pub euler_omega_twist: i64,
    pub low_degree_pencils: Vec<EllipticPencil>,
    pub propagation: Propagation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub bott_vanishing: BottVanishing,
    pub reasons: Vec<Reason>,
    pub data: ComputedData,
    pub warnings: Vec<String>,
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Vanishes => 0,
        Status::Fails => 1,
        Status::Undetermined | Status::NeedsFiberData => 2,
    }
}

pub const INPUT_ERROR: u8 = 64;

pub fn analyze(spec: &SurfaceSpec) -> Result<Report, InputError> {
    let resolved = spec.resolve()?;
    let p = &resolved.polarized;
    let engine = |e: k3bott::Error| InputError::new("", e);
    let fibrations = (!resolved.fibrations.is_empty()).then_some(resolved.fibrations.as_slice());
    let verdict = bott_verdict(p, fibrations).map_err(engine)?;
    let b2 = p.ample_square();
    let primitive = p.lattice().is_primitive(p.ample()).map_err(engine)?;
    let signature = p.lattice().signature();

    let mut warnings = Vec::new();
    if !primitive {
        warnings.push(format!("line bundle {} is not primitive", p.ample()));
    }
    let gram = p.lattice().gram();
    if gram == [vec![2, 5], vec![5, 10]] {
        warnings.push("lattice equals the Gram matrix of the anticanonical degree-62 example".into());
    }
    if gram == [vec![2]] && p.ample().coords()[0].abs() == 6 {
        warnings.push("this is the degree-72 example B = 6A on a double sextic plane".into());
    }

    Ok(Report {
        status: verdict.status,
        bott_vanishing: verdict.bott_vanishing,
        reasons: verdict.reasons,
        data: ComputedData {
            rank: p.rank(),
            signature: [signature.positives, signature.negatives],
            line_bundle: p.ample().clone(),
            b_squared: b2,
            primitive,
            euler_line_bundle: euler_char_line_bundle(b2).map_err(engine)?,
            euler_omega_twist: euler_char_omega_twist(b2).map_err(engine)?,
            low_degree_pencils: find_low_degree_elliptic(p, 4).map_err(engine)?,
            propagation: propagate_multiples(p, verdict.status == Status::Vanishes),
        },
        warnings,
    })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Vanishes => "vanishes",
        Status::Fails => "fails",
        Status::Undetermined => "undetermined",
        Status::NeedsFiberData => "needs fiber data",
    }
}

pub fn render_text(r: &Report) -> String {
    let d = &r.data;
    let mut out = String::new();
    let _ = writeln!(out, "H^1(X, Omega^1 (x) B): {}", status_name(r.status));
    let bott = match r.bott_vanishing {
        BottVanishing::Holds => "holds",
        BottVanishing::Fails => "fails",
        BottVanishing::Unknown => "unknown",
    };
    let _ = writeln!(out, "Bott vanishing for X: {bott}");
    let _ = writeln!(
        out,
        "B = {}, B^2 = {}, {}primitive; rank {}, signature ({}, {})",
        d.line_bundle,
        d.b_squared,
        if d.primitive { "" } else { "not " },
        d.rank,
        d.signature[0],
        d.signature[1]
    );
    let _ = writeln!(
        out,
        "chi(B) = {}, chi(Omega^1 (x) B) = {}",
        d.euler_line_bundle, d.euler_omega_twist
    );
    if d.low_degree_pencils.is_empty() {
        let _ = writeln!(out, "elliptic pencils of degree <= 4: none");
    } else {
        let _ = writeln!(out, "elliptic pencils of degree <= 4:");
        for e in &d.low_degree_pencils {
            let _ = writeln!(out, "  E = {}, B.E = {}", e.class, e.degree);
        }
    }
    let _ = writeln!(out, "reasons:");
    for reason in &r.reasons {
        let _ = write!(out, "  [{}] {}", reason.rule, reason.detail);
        if let Some(c) = &reason.class {
            let _ = write!(out, " (E = {c})");
        }
        if let Some([lo, hi]) = reason.window {
            let _ = write!(out, " (open window {lo}..={hi})");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "      {}", reason.citation);
    }
    match &d.propagation {
        Propagation::AllMultiples { .. } => {
            let _ = writeln!(out, "multiples: H^1(X, Omega^1 (x) jB) = 0 for all j >= 1");
        }
        Propagation::NoClaim { reason } => {
            let _ = writeln!(out, "multiples: no claim ({reason})");
        }
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
