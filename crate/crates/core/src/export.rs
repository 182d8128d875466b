//! JSON, CSV and DOT renderings of rings, planes, conics, arcs, MUB sets and
//! certificates. Every JSON document carries `schema` and `version` keys;
//! object keys are emitted in sorted order so output is byte-stable.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::arc::ArcSearchResult;
use crate::conic::{Conic, ConicAnalysis, IntersectionEntry, ProperVerdict};
use crate::correspondence::CorrespondenceCertificate;
use crate::mub::MubSet;
use crate::plane::{ElementKind, PlaneModel, Triple};
use crate::ring::Ring;

pub const SCHEMA_VERSION: u32 = 1;

fn envelope(schema: &str, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("export bodies are objects");
    obj.insert("schema".into(), json!(schema));
    obj.insert("version".into(), json!(SCHEMA_VERSION));
    body
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn triple_json(ring: &Ring, t: &Triple) -> Value {
    json!(t.iter().map(|&c| ring.coeffs(c)).collect::<Vec<_>>())
}

pub fn ring_json(ring: &Ring) -> Value {
    let mut body = json!({ "ring": ring.descriptor() });
    if let Ok(t) = ring.teichmuller_set() {
        body["teichmuller"] = json!({
            "zeta": ring.coeffs(t.zeta),
            "elements": t.elements.iter().map(|&e| ring.coeffs(e)).collect::<Vec<_>>(),
        });
    }
    envelope("hjelmslev.ring", body)
}

pub fn plane_json(model: &PlaneModel) -> Value {
    let ring = model.ring();
    let classes = |kind| -> Vec<Vec<usize>> {
        model
            .neighbour_classes(kind)
            .iter()
            .map(|c| c.members.clone())
            .collect()
    };
    envelope(
        "hjelmslev.plane",
        json!({
            "ring": ring.descriptor(),
            "points": model.points().iter().map(|p| triple_json(ring, &p.coords)).collect::<Vec<_>>(),
            "lines": model.lines().iter().map(|l| triple_json(ring, &l.coords)).collect::<Vec<_>>(),
            "neighbour_classes": classes(ElementKind::Points),
            "line_neighbour_classes": classes(ElementKind::Lines),
        }),
    )
}

/// Rows are points, columns are lines, entries 0/1.
pub fn incidence_csv(model: &PlaneModel) -> String {
    let n_points = model.points().len();
    let n_lines = model.lines().len();
    let mut out = String::with_capacity(n_points * n_lines * 2);
    for p in 0..n_points {
        for l in 0..n_lines {
            if l > 0 {
                out.push(',');
            }
            out.push(if model.is_incident(l, p) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Neighbour graph with one cluster per neighbour class.
pub fn neighbour_dot(model: &PlaneModel) -> String {
    let field = model.residue_field();
    let mut out = String::from("graph neighbours {\n  node [shape=point];\n");
    for (k, class) in model.neighbour_classes(ElementKind::Points).iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{");
        let _ = writeln!(
            out,
            "    label=\"{}\";",
            crate::plane::format_triple(field, &class.image)
        );
        for &m in &class.members {
            let _ = writeln!(
                out,
                "    p{m} [xlabel=\"{}\"];",
                model.format_triple(&model.points()[m].coords)
            );
        }
        for (i, &a) in class.members.iter().enumerate() {
            for &b in &class.members[i + 1..] {
                let _ = writeln!(out, "    p{a} -- p{b};");
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

pub fn conic_coeffs_json(conic: &Conic) -> Value {
    let ring = conic.ring();
    json!(conic.coeffs().iter().map(|&c| ring.coeffs(c)).collect::<Vec<_>>())
}

pub fn conic_json(analysis: &ConicAnalysis, model: &PlaneModel, verdict: ProperVerdict) -> Value {
    let ring = model.ring();
    let field = model.residue_field();
    let pts = |idx: &[usize]| -> Vec<Value> {
        idx.iter()
            .map(|&i| triple_json(ring, &model.points()[i].coords))
            .collect()
    };
    envelope(
        "hjelmslev.conic",
        json!({
            "ring": ring.descriptor(),
            "equation": analysis.conic.describe(),
            "coeffs": conic_coeffs_json(&analysis.conic),
            "points": pts(&analysis.points),
            "classes": analysis.classes.iter().map(|c| pts(&c.members)).collect::<Vec<_>>(),
            "classical_image": analysis.classical_image.iter().map(|p| triple_json(field, &p.coords)).collect::<Vec<_>>(),
            "proper_verdict": verdict,
        }),
    )
}

/// Pairwise intersection table for labelled conics.
pub fn intersections_json(conics: &[(&str, Conic)], entries: &[IntersectionEntry], model: &PlaneModel) -> Value {
    let ring = model.ring();
    envelope(
        "hjelmslev.conic-intersections",
        json!({
            "ring": ring.descriptor(),
            "conics": conics.iter().map(|(label, c)| json!({
                "label": label,
                "coeffs": conic_coeffs_json(c),
            })).collect::<Vec<_>>(),
            "pairs": entries.iter().map(|e| json!({
                "first": e.first,
                "second": e.second,
                "count": e.common.len(),
                "common": e.common.iter().map(|&i| triple_json(ring, &model.points()[i].coords)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
    )
}

pub fn arc_json(result: &ArcSearchResult, model: &PlaneModel) -> Value {
    let ring = model.ring();
    envelope(
        "hjelmslev.arc",
        json!({
            "ring": ring.descriptor(),
            "max_size": result.max_size,
            "witness_coords": result.witness.as_ref().map(|w| {
                w.iter().map(|&i| triple_json(ring, &model.points()[i].coords)).collect::<Vec<_>>()
            }),
            "census": result.census,
            "exhausted": result.exhausted,
            "nodes_visited": result.nodes_visited,
        }),
    )
}

pub fn mub_json(set: &MubSet) -> Value {
    envelope(
        "hjelmslev.mub",
        json!({
            "q": set.q,
            "bases": set.bases.iter().map(|b| {
                b.vectors.iter().map(|v| v.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "report": set.report,
        }),
    )
}

/// The (q+1) × (q+1) deviation matrix as CSV.
pub fn deviation_csv(set: &MubSet) -> String {
    let mut out = String::new();
    for row in &set.report.deviations {
        let cells: Vec<String> = row.iter().map(|d| format!("{d:.3e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn certificate_json(cert: &CorrespondenceCertificate) -> Value {
    envelope(
        "hjelmslev.correspondence",
        json!({
            "q": cert.q,
            "ring": cert.ring,
            "conic_coeffs": cert.conic_coeffs,
            "bijections": {
                "basis_to_class": cert.basis_to_class,
                "vector_to_point": cert.vector_to_point,
            },
            "checks": cert.checks,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingKind};

    #[test]
    fn plane_export_shapes() {
        let model = PlaneModel::enumerate(make_ring(2, 1, RingKind::GaloisRing, None).unwrap()).unwrap();
        let v = plane_json(&model);
        assert_eq!(v["schema"], "hjelmslev.plane");
        assert_eq!(v["version"], 1);
        assert_eq!(v["points"].as_array().unwrap().len(), 28);
        assert_eq!(v["points"][0], json!([[0], [0], [1]]));
        assert_eq!(v["neighbour_classes"].as_array().unwrap().len(), 7);

        let csv = incidence_csv(&model);
        assert_eq!(csv.lines().count(), 28);
        assert!(csv.lines().all(|l| l.split(',').count() == 28));
        assert!(csv.lines().all(|l| l.matches('1').count() == 6));

        let dot = neighbour_dot(&model);
        assert_eq!(dot.matches("subgraph cluster_").count(), 7);
        assert_eq!(dot.matches(" -- ").count(), 7 * 6);
    }
}
