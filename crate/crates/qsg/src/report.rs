//! Reports and their JSON and text renderings.
//!
//! JSON goes through `serde_json::Value`, whose maps keep keys sorted, so
//! equal reports always serialize to identical bytes.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Value};

use qsg_core::algebra::{dimension, dimension_oracle_with_cap, CornerData, Which};
use qsg_core::construct::SgPresentation;
use qsg_core::cycles::classified_cycles;
use qsg_core::{
    descriptor_g, descriptor_gentle, descriptor_sg, gldim_flags, validate_skewed_gentle, BoundQuiver,
    CycleClass, Error, GldimFlags, SingularityDescriptor, SkewedGentleTriple, ValidationReport,
};

pub fn validation_json(name: &str, r: &ValidationReport) -> Value {
    json!({
        "name": name,
        "valid": r.skewed_gentle,
        "flags": {
            "special_biserial": r.special_biserial,
            "gentle": r.gentle,
            "finite_dimensional": r.finite_dimensional,
            "skewed_gentle": r.skewed_gentle,
        },
        "violations": r.violations.iter().map(|v| json!({
            "rule": v.rule.as_str(),
            "items": v.items,
        })).collect::<Vec<_>>(),
    })
}

pub fn validation_text(name: &str, r: &ValidationReport) -> String {
    let mut out = String::new();
    let verdict = if r.skewed_gentle { "skewed-gentle" } else { "not skewed-gentle" };
    writeln!(out, "{name}: {verdict}").unwrap();
    writeln!(
        out,
        "special_biserial={} gentle={} finite_dimensional={} skewed_gentle={}",
        r.special_biserial, r.gentle, r.finite_dimensional, r.skewed_gentle
    )
    .unwrap();
    for v in &r.violations {
        writeln!(out, "violation {}: {}", v.rule, v.items.join(" ")).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descriptors {
    pub gentle: SingularityDescriptor,
    pub sg: SingularityDescriptor,
    pub g: SingularityDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dims {
    pub gentle: usize,
    pub sg: usize,
    pub g: usize,
    /// `None` when the oracle hit its path cap.
    pub sg_oracle: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub name: String,
    pub validation: ValidationReport,
    pub cycles: Vec<CycleClass>,
    pub descriptors: Descriptors,
    pub gldim: GldimFlags,
    pub dims: Option<Dims>,
}

impl InvariantReport {
    /// Fails with `NotSkewedGentle` on invalid input.
    pub fn compute(t: &SkewedGentleTriple) -> Result<Self, Error> {
        let validation = validate_skewed_gentle(t);
        if !validation.skewed_gentle {
            return Err(Error::NotSkewedGentle);
        }
        Ok(InvariantReport {
            name: t.name().to_string(),
            validation,
            cycles: classified_cycles(t)?,
            descriptors: Descriptors {
                gentle: descriptor_gentle(t.pair())?,
                sg: descriptor_sg(t)?,
                g: descriptor_g(t)?,
            },
            gldim: gldim_flags(t)?,
            dims: None,
        })
    }

    /// Adds dimensions and the oracle cross-check. A disagreement is an
    /// error; a cap hit leaves `sg_oracle` empty.
    pub fn with_dims(mut self, t: &SkewedGentleTriple, cap: usize) -> Result<Self, Error> {
        let sg = dimension(t, Which::Sg)?;
        let sg_oracle = match dimension_oracle_with_cap(t, Which::Sg, cap) {
            Ok(o) if o == sg => Some(o),
            Ok(o) => {
                return Err(Error::InternalInconsistency(format!(
                    "basis dimension {sg} differs from oracle dimension {o}"
                )))
            }
            Err(Error::LimitExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        self.dims = Some(Dims {
            gentle: dimension(t, Which::Gentle)?,
            sg,
            g: dimension(t, Which::G)?,
            sg_oracle,
        });
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        let mut v = validation_json(&self.name, &self.validation);
        let obj = v.as_object_mut().expect("object");
        obj.insert(
            "cycles".into(),
            self.cycles
                .iter()
                .map(|c| {
                    json!({
                        "arrows": c.arrows,
                        "length": c.length(),
                        "parity": c.parity.map(|p| p.as_str()),
                    })
                })
                .collect(),
        );
        obj.insert(
            "descriptors".into(),
            json!({
                "gentle": self.descriptors.gentle.shifts(),
                "sg": self.descriptors.sg.shifts(),
                "g": self.descriptors.g.shifts(),
            }),
        );
        obj.insert(
            "gldim_finite".into(),
            json!({ "gentle": self.gldim.gentle, "sg": self.gldim.sg, "g": self.gldim.g }),
        );
        if let Some(d) = &self.dims {
            obj.insert(
                "dims".into(),
                json!({ "gentle": d.gentle, "sg": d.sg, "g": d.g, "sg_oracle": d.sg_oracle }),
            );
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let finite = |b: bool| if b { "finite" } else { "infinite" };
        writeln!(out, "name: {}", self.name).unwrap();
        writeln!(out, "valid: {}", self.validation.skewed_gentle).unwrap();
        writeln!(out, "cycles: {}", self.cycles.len()).unwrap();
        for c in &self.cycles {
            let parity = c.parity.map(|p| p.as_str()).unwrap_or("-");
            writeln!(out, "  [{}] length {} {parity}", c.arrows.join(", "), c.length()).unwrap();
        }
        let d = &self.descriptors;
        writeln!(out, "descriptors: gentle={} sg={} g={}", d.gentle, d.sg, d.g).unwrap();
        for (label, x) in [("gentle", &d.gentle), ("sg", &d.sg), ("g", &d.g)] {
            writeln!(out, "  {label}: {} ({})", x.factors(), x.nakayama_aliases()).unwrap();
        }
        writeln!(
            out,
            "gldim: gentle={} sg={} g={}",
            finite(self.gldim.gentle),
            finite(self.gldim.sg),
            finite(self.gldim.g)
        )
        .unwrap();
        if let Some(dims) = &self.dims {
            let oracle = dims.sg_oracle.map_or("capped".to_string(), |o| o.to_string());
            writeln!(out, "dims: gentle={} sg={} g={} sg_oracle={oracle}", dims.gentle, dims.sg, dims.g).unwrap();
        }
        out
    }
}

pub fn corner_json(c: &CornerData) -> Value {
    let names = |ps: &[qsg_core::BasisPath]| -> Vec<Vec<String>> { ps.iter().map(|p| p.arrow_names()).collect() };
    json!({
        "vertex": c.special_vertex,
        "case": c.case.as_str(),
        "dims": {
            "gamma": c.dim_gamma,
            "gamma_prime": c.dim_gamma_prime,
            "a": c.dim_a,
            "m": c.dim_m,
            "n": c.dim_n,
            "corner": c.dim_corner,
            "im_phi": c.dim_im_phi,
            "m_prime": c.dim_m_prime,
            "n_prime": c.dim_n_prime,
        },
        "t1": names(&c.t1_basis),
        "t2": names(&c.t2_basis),
        "checks": {
            "partition": c.partition_holds(),
            "phi_injective": c.phi_injective,
            "counting": c.counting_holds,
            "identity": c.identity_holds,
        },
    })
}

pub fn corner_text(c: &CornerData) -> String {
    let mut out = String::new();
    writeln!(out, "vertex: {} (case {})", c.special_vertex, c.case).unwrap();
    writeln!(
        out,
        "dim gamma={} gamma_prime={} A={} M={} N={} im_phi={} M'={} N'={}",
        c.dim_gamma, c.dim_gamma_prime, c.dim_a, c.dim_m, c.dim_n, c.dim_im_phi, c.dim_m_prime, c.dim_n_prime
    )
    .unwrap();
    for (label, ps) in [("T1", &c.t1_basis), ("T2", &c.t2_basis)] {
        for p in ps {
            writeln!(out, "{label}: {p}").unwrap();
        }
    }
    writeln!(
        out,
        "checks: partition={} phi_injective={} counting={} identity={}",
        c.partition_holds(),
        c.phi_injective,
        c.counting_holds,
        c.identity_holds
    )
    .unwrap();
    out
}

pub fn pair_json(name: &str, bq: &BoundQuiver, special: &BTreeSet<String>) -> Value {
    let q = bq.quiver();
    json!({
        "name": name,
        "vertices": q.vertices(),
        "special": special,
        "arrows": q.arrows().map(|a| json!({
            "name": a.name, "source": a.source, "target": a.target,
        })).collect::<Vec<_>>(),
        "relations": bq.relations().iter().map(|(o, i)| [o, i]).collect::<Vec<_>>(),
        "counts": {
            "vertices": q.vertices().len(),
            "arrows": q.arrow_count(),
            "relations": bq.relations().len(),
        },
    })
}

pub fn sg_json(name: &str, p: &SgPresentation) -> Value {
    let pair = |(o, i): &qsg_core::construct::SgTwoPath| [o.name(), i.name()];
    json!({
        "name": name,
        "vertices": p.vertex_names(),
        "arrows": p.arrows.iter().map(|a| json!({
            "name": a.name(),
            "base": a.base,
            "source": a.source.name(),
            "target": a.target.name(),
        })).collect::<Vec<_>>(),
        "zero_relations": p.zero_relations.iter().map(pair).collect::<Vec<_>>(),
        "comm_relations": p.comm_relations.iter().map(|c| json!({
            "plus": pair(&c.through_plus),
            "minus": pair(&c.through_minus),
        })).collect::<Vec<_>>(),
        "counts": {
            "vertices": p.vertices.len(),
            "arrows": p.arrows.len(),
            "zero_relations": p.zero_relations.len(),
            "comm_relations": p.comm_relations.len(),
        },
    })
}

pub fn sg_text(name: &str, p: &SgPresentation) -> String {
    let mut out = String::new();
    writeln!(out, "quiver {name}").unwrap();
    writeln!(out, "vertices: {}", p.vertex_names().join(", ")).unwrap();
    writeln!(out, "arrows:").unwrap();
    for a in &p.arrows {
        writeln!(out, "  {}: {} -> {}", a.name(), a.source, a.target).unwrap();
    }
    writeln!(out, "zero relations:").unwrap();
    for (o, i) in &p.zero_relations {
        writeln!(out, "  {}*{}", o.name(), i.name()).unwrap();
    }
    writeln!(out, "comm relations:").unwrap();
    for c in &p.comm_relations {
        let (po, pi) = &c.through_plus;
        let (mo, mi) = &c.through_minus;
        writeln!(out, "  {}*{} = {}*{}", po.name(), pi.name(), mo.name(), mi.name()).unwrap();
    }
    writeln!(
        out,
        "counts: vertices={} arrows={} zero_relations={} comm_relations={}",
        p.vertices.len(),
        p.arrows.len(),
        p.zero_relations.len(),
        p.comm_relations.len()
    )
    .unwrap();
    out
}

/// Compact JSON text.
pub fn to_json_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsg_core::algebra::corner_data;
    use qsg_core::{build_sg_presentation, fixtures};

    #[test]
    fn descriptor_fragments() {
        let r = InvariantReport::compute(&fixtures::fix_a2()).unwrap();
        let s = to_json_string(&r.to_json());
        assert!(s.contains(r#""descriptors":{"g":[4],"gentle":[2],"sg":[2]}"#), "{s}");
        let r = InvariantReport::compute(&fixtures::fix_b3()).unwrap();
        let s = to_json_string(&r.to_json());
        assert!(s.contains(r#""descriptors":{"g":[6],"gentle":[3],"sg":[3]}"#), "{s}");
        let r = InvariantReport::compute(&fixtures::fix_c1()).unwrap();
        let s = to_json_string(&r.to_json());
        assert!(s.contains(r#""descriptors":{"g":[],"gentle":[],"sg":[]}"#), "{s}");
        assert!(!s.contains("\"dims\""));
    }

    #[test]
    fn report_schema_keys() {
        let r = InvariantReport::compute(&fixtures::fix_a2())
            .unwrap()
            .with_dims(&fixtures::fix_a2(), 1000)
            .unwrap();
        let v = r.to_json();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["cycles", "descriptors", "dims", "flags", "gldim_finite", "name", "valid", "violations"]
        );
        assert_eq!(v["dims"], json!({"g": 9, "gentle": 4, "sg": 8, "sg_oracle": 8}));
        assert_eq!(v["cycles"][0], json!({"arrows": ["a", "b"], "length": 2, "parity": "odd"}));
        assert_eq!(v["gldim_finite"]["sg"], json!(false));
    }

    #[test]
    fn capped_oracle_is_reported() {
        let t = fixtures::fix_b3();
        let r = InvariantReport::compute(&t).unwrap().with_dims(&t, 2).unwrap();
        assert_eq!(r.dims.unwrap().sg_oracle, None);
    }

    #[test]
    fn invalid_triple_has_no_invariants() {
        let t = fixtures::fix_d();
        assert_eq!(InvariantReport::compute(&t), Err(Error::NotSkewedGentle));
        let v = validation_json(t.name(), &validate_skewed_gentle(&t));
        assert_eq!(v["valid"], json!(false));
        assert!(v["violations"]
            .as_array()
            .unwrap()
            .iter()
            .any(|x| x["rule"] == "G1"));
    }

    #[test]
    fn text_report_fix_a2() {
        let text = InvariantReport::compute(&fixtures::fix_a2()).unwrap().to_text();
        assert!(text.contains("descriptors: gentle={2} sg={2} g={4}"));
        assert!(text.contains("g: D^b(k)/[4] (S_4-stable)"));
        assert!(text.contains("gldim: gentle=infinite sg=infinite g=infinite"));
    }

    #[test]
    fn construction_counts() {
        let p = build_sg_presentation(&fixtures::fix_a2()).unwrap();
        let v = sg_json("A", &p);
        assert_eq!(
            v["counts"],
            json!({"vertices": 3, "arrows": 4, "zero_relations": 4, "comm_relations": 1})
        );
        assert!(sg_text("A", &p).contains("counts: vertices=3 arrows=4 zero_relations=4 comm_relations=1"));
    }

    #[test]
    fn corner_rendering() {
        let c = corner_data(&fixtures::fix_a2(), "2").unwrap();
        let v = corner_json(&c);
        assert_eq!(v["dims"]["gamma"], json!(8));
        assert_eq!(v["case"], json!("c1"));
        assert_eq!(v["t1"], json!([["b@2-@1"]]));
        assert!(corner_text(&c).contains("dim gamma=8 gamma_prime=4 A=5 M=1 N=1 im_phi=1"));
    }
}
