//! The full analysis pipeline over one window and its JSON report.

use std::fmt::Write as _;
use std::hash::Hasher;

use fnv::FnvHasher;
use serde::Serialize;

use crate::descent::{descendant_window, layer_profile, LayerProfile, P3Verdict, RootedWindow};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::graph::VertexId;
use crate::io::write_json;
use crate::reachability::{alternet_graph, alternets, class_c_membership_with_cap, AlternetGraph, ClassCReport, UniversalitySignal};
use crate::relations::{delta_n_partition, find_g3_k, r_partition, rho_quotient_tree_check, DeltaPartition, G3Result, RPartition, RhoTreeReport};
use crate::structure::{
    block_system, check_p0, check_p1, condition_c, pq_consistency, z_labeling, BlockSystem, ConditionC, P0Verdict, P1Verdict,
    PqRecord, ZLabeling,
};
use crate::symmetry::{is_isomorphic, layer_transitivity_diagnostic, IsoConstraints, LayerTransitivityDiagnostic, DEFAULT_ISO_CAP};
use crate::window::Window;

/// Number of interior vertices tried when choosing a root automatically.
pub const ROOT_CANDIDATES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub delta_n: usize,
    pub depth: usize,
    pub root: Option<VertexId>,
    pub iso_cap: usize,
    pub budget: usize,
    pub pq: Option<(usize, usize)>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            delta_n: 1,
            depth: 3,
            root: None,
            iso_cap: DEFAULT_ISO_CAP,
            budget: 32,
            pq: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputSummary {
    pub spec: Option<GeneratorSpec>,
    /// FNV-1a 64 of the canonical JSON encoding, in hex.
    pub hash: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub interior_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReachabilitySection {
    pub class_count: usize,
    pub alternet_count: usize,
    pub complete_alternet_count: usize,
    /// Distinct `(|X|, |Y|)` among complete alternets.
    pub complete_shapes: Vec<(usize, usize)>,
    pub signal: UniversalitySignal,
    pub alternet_graph: AlternetGraph,
    pub r_partition: RPartition,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    #[serde(rename = "P0")]
    pub p0: P0Verdict,
    #[serde(rename = "P1")]
    pub p1: Option<P1Verdict>,
    #[serde(rename = "P3")]
    pub p3: P3Verdict,
    #[serde(rename = "G3")]
    pub g3: G3Result,
    pub condition_c: ConditionC,
    pub blocks: BlockSystem,
    pub pq: Option<PqRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescendantSection {
    /// Root in the ids of the input window.
    pub root: VertexId,
    pub depth: usize,
    pub layer_profile: LayerProfile,
    pub properties: PropertyReport,
    pub rho: Option<RhoTreeReport>,
    pub layer_transitivity: Option<LayerTransitivityDiagnostic>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetrySection {
    pub first_alternet_class_c: Option<ClassCReport>,
    /// Complete alternets isomorphic to the first one, out of those tested.
    pub alternets_isomorphic_to_first: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub input: InputSummary,
    pub delta: DeltaPartition,
    pub reachability: ReachabilitySection,
    pub z_labeling: ZLabeling,
    pub descendant: Option<DescendantSection>,
    pub symmetry: SymmetrySection,
    /// True when some section was skipped (cap exceeded, window too small).
    pub partial: bool,
    pub notes: Vec<String>,
}

pub fn content_hash(w: &Window) -> String {
    let mut h = FnvHasher::default();
    h.write(write_json(w).as_bytes());
    format!("{:016x}", h.finish())
}

/// Deepest fitting descendant window (up to `depth`) at `root`.
fn deepest_fit(w: &Window, root: VertexId, depth: usize) -> Option<RootedWindow> {
    (1..=depth).rev().find_map(|d| descendant_window(w, root, d).ok())
}

/// The given root, or the first of the shallowest interior vertices whose
/// descendant window reaches deepest.
fn choose_root(w: &Window, opts: &AnalyzeOptions) -> Option<RootedWindow> {
    if let Some(r) = opts.root {
        return deepest_fit(w, r, opts.depth);
    }
    let mut candidates = w.interior_vertices();
    candidates.sort_by_key(|&v| (w.level_of(v).unwrap_or(0), v));
    let mut best: Option<RootedWindow> = None;
    for &v in candidates.iter().take(ROOT_CANDIDATES) {
        if let Some(g) = deepest_fit(w, v, opts.depth) {
            if best.as_ref().is_none_or(|b| g.depth > b.depth) {
                let full = g.depth == opts.depth;
                best = Some(g);
                if full {
                    break;
                }
            }
        }
    }
    best
}

fn cap_note(notes: &mut Vec<String>, what: &str, e: &Error) {
    notes.push(format!("{what} skipped: {e}"));
}

fn descendant_section(gamma: RootedWindow, opts: &AnalyzeOptions, notes: &mut Vec<String>) -> Result<DescendantSection> {
    let profile = layer_profile(&gamma);
    if let Some(r) = &profile.refutation {
        notes.push(format!(
            "layer {} has non-uniform in-valency ({} at {}, {} at {}); later r_i not computed",
            r.layer, r.in_u, gamma.source[r.u], r.in_v, gamma.source[r.v]
        ));
    }
    if profile.stabilization.is_none() {
        notes.push("N undetermined: the in-valency sequence needs a constant tail of three terms".into());
    }
    let p1_depth = gamma.depth.saturating_sub(1).max(1);
    let p1 = match check_p1(&gamma, p1_depth, opts.budget, opts.iso_cap) {
        Ok(v) => Some(v),
        Err(e) => {
            cap_note(notes, "P1", &e);
            None
        }
    };
    let g3 = find_g3_k(&gamma);
    let rho = match g3.k {
        Some(k) if 2 * k - 1 <= gamma.depth => Some(rho_quotient_tree_check(&gamma, k)?),
        Some(k) => {
            notes.push(format!("ρ quotient needs depth {} for k = {k}", 2 * k - 1));
            None
        }
        None => {
            notes.push("no G3 constant verified inside the window".into());
            None
        }
    };
    let pq = match opts.pq {
        None => None,
        Some((p, q)) => match pq_consistency(&gamma, p, q) {
            Ok(r) => Some(r),
            Err(e) => {
                notes.push(format!("p·q check rejected: {e}"));
                None
            }
        },
    };
    let layer_transitivity = match layer_transitivity_diagnostic(&gamma, opts.iso_cap) {
        Ok(d) => Some(d),
        Err(e) => {
            cap_note(notes, "layer transitivity", &e);
            None
        }
    };
    let properties = PropertyReport {
        p0: check_p0(&gamma),
        p1,
        p3: profile.p3,
        g3,
        condition_c: condition_c(&gamma, gamma.root, gamma.depth)?,
        blocks: block_system(&gamma),
        pq,
    };
    Ok(DescendantSection {
        root: gamma.source[gamma.root],
        depth: gamma.depth,
        layer_profile: profile,
        properties,
        rho,
        layer_transitivity,
    })
}

/// Runs every analysis within the configured caps. Sections that cannot be
/// computed are left out and explained in `notes`.
pub fn analyze(w: &Window, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let mut notes = vec![
        "window-relative: verdicts describe this finite window; boundary vertices may lack neighbours".to_string(),
    ];
    let mut partial = false;

    let delta = delta_n_partition(w, opts.delta_n, &w.interior_vertices())?;
    if !delta.excluded.is_empty() {
        notes.push(format!(
            "{} interior vertices excluded from δ_{}: their cones reach the boundary",
            delta.excluded.len(),
            opts.delta_n
        ));
    }

    let alts = alternets(w);
    let al = alternet_graph(w, &alts.alternets);
    let complete: Vec<_> = alts.alternets.iter().filter(|a| a.complete).collect();
    let mut shapes: Vec<(usize, usize)> = complete.iter().map(|a| (a.sources.len(), a.sinks.len())).collect();
    shapes.sort_unstable();
    shapes.dedup();
    let reachability = ReachabilitySection {
        class_count: alts.alternets.len(),
        alternet_count: alts.alternets.len(),
        complete_alternet_count: complete.len(),
        complete_shapes: shapes,
        signal: alts.signal,
        alternet_graph: al,
        r_partition: r_partition(w),
    };

    let mut symmetry = SymmetrySection {
        first_alternet_class_c: None,
        alternets_isomorphic_to_first: None,
    };
    if let Some(first) = complete.first() {
        match class_c_membership_with_cap(first, opts.iso_cap) {
            Ok(r) => symmetry.first_alternet_class_c = Some(r),
            Err(e) => {
                partial = true;
                cap_note(&mut notes, "class 𝒞 check", &e);
            }
        }
        let reference = first.to_bipartite().graph;
        let mut matched = 0;
        let mut tested = 0;
        for a in complete.iter().take(opts.budget) {
            match is_isomorphic(&reference, &a.to_bipartite().graph, &IsoConstraints::default(), opts.iso_cap) {
                Ok(r) => {
                    tested += 1;
                    matched += usize::from(r.is_isomorphic());
                }
                Err(e) => {
                    partial = true;
                    cap_note(&mut notes, "alternet isomorphism", &e);
                    break;
                }
            }
        }
        if tested > 0 {
            symmetry.alternets_isomorphic_to_first = Some((matched, tested));
        }
    }

    let descendant = match choose_root(w, opts) {
        Some(gamma) => {
            if gamma.depth < opts.depth {
                notes.push(format!(
                    "descendant window cut at depth {} (requested {})",
                    gamma.depth, opts.depth
                ));
            }
            let before = notes.len();
            let section = descendant_section(gamma, opts, &mut notes)?;
            partial |= notes[before..].iter().any(|n| n.contains("skipped"));
            Some(section)
        }
        None => {
            partial = true;
            notes.push("no interior root with a fitting descendant window".into());
            None
        }
    };

    Ok(AnalysisReport {
        input: InputSummary {
            spec: w.spec.clone(),
            hash: content_hash(w),
            vertex_count: w.vertex_count(),
            edge_count: w.graph.edge_count(),
            interior_count: w.interior_vertices().len(),
        },
        delta,
        reachability,
        z_labeling: z_labeling(&w.graph),
        descendant,
        symmetry,
        partial,
        notes,
    })
}

pub fn report_json(r: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report types serialise");
    s.push('\n');
    s
}

/// A few lines for a terminal.
pub fn summary(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "vertices {} (interior {}), edges {}, hash {}",
        r.input.vertex_count, r.input.interior_count, r.input.edge_count, r.input.hash
    );
    let _ = writeln!(
        s,
        "δ_{}: {} classes, {}",
        r.delta.n,
        r.delta.partition.len(),
        if r.delta.is_nontrivial() { "non-trivial" } else { "trivial" }
    );
    let _ = writeln!(
        s,
        "reachability: {} classes ({} complete), signal {:?}",
        r.reachability.class_count, r.reachability.complete_alternet_count, r.reachability.signal
    );
    let z = match &r.z_labeling.verdict {
        crate::structure::ZVerdict::Labeled(_) => "labeled".to_string(),
        crate::structure::ZVerdict::Conflict(c) => {
            format!("conflict ({} forward, {} backward)", c.forward_count, c.backward_count)
        }
    };
    let _ = writeln!(s, "property Z: {z}");
    if let Some(d) = &r.descendant {
        let _ = writeln!(
            s,
            "root {} depth {}: layers {:?}, r {:?}, P3 {:?}, blocks s={}",
            d.root, d.depth, d.layer_profile.layer_sizes, d.layer_profile.in_valencies, d.properties.p3, d.properties.blocks.s
        );
    }
    if r.partial {
        let _ = writeln!(s, "partial report; see notes");
    }
    s
}
