//! The analysis report: every invariant of one graph, as a JSON value with
//! sorted keys. Integers that fit in `i64` are numbers, larger ones strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::blowup_ideals::{disorderly_ideal, is_orderly, is_principal, toy_adjusting_parameters};
use crate::level_graph::{codim, validate, EnhancedLevelGraph};
use crate::residue_grc::{dim_identity_check, grc_conditions, grc_space_dims, stratum_dim};
use crate::toric_closure::{closure_normality, torus_equations, Normality};
use crate::twist_lattice::{
    covering_groups, k_group, pm_class_count, prong_rotation_group, simple_twist_data,
    twist_group_basis, FinAbGroup,
};

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

fn rows(xs: &[Vec<BigInt>]) -> Value {
    Value::Array(xs.iter().map(|r| ints(r)).collect())
}

fn group(g: &FinAbGroup) -> Value {
    json!({
        "invariant_factors": ints(g.invariant_factors()),
        "free_rank": g.free_rank(),
        "order": g.order().as_ref().map_or(Value::Null, int),
        "display": g.to_string(),
    })
}

fn normality(n: &Normality) -> Value {
    match n {
        Normality::Normal => json!({ "verdict": "normal" }),
        Normality::NonNormal { witness } => json!({
            "verdict": "non_normal",
            "witness": ints(witness),
        }),
        Normality::Inconclusive { reason } => json!({
            "verdict": "inconclusive",
            "reason": reason,
        }),
    }
}

fn disorderly(graph: &EnhancedLevelGraph) -> Value {
    let not_applicable = |reason: &str| json!({ "applicable": false, "reason": reason });
    let Some((vars, params)) = toy_adjusting_parameters(graph) else {
        return not_applicable("graph has horizontal edges or a vertex with several upward edges");
    };
    if params.is_empty() {
        return not_applicable("graph has a single level");
    }
    match disorderly_ideal(&vars, &params) {
        Ok(ideal) => json!({
            "applicable": true,
            "variables": vars,
            "parameters": params.iter().map(|m| m.display(&vars).to_string()).collect::<Vec<_>>(),
            "ideal": ideal.to_string(),
            "principal": is_principal(&ideal).is_some(),
            "orderly": is_orderly(&params),
        }),
        Err(e) => not_applicable(&e.to_string()),
    }
}

/// Report for a graph that passed validation.
pub fn analysis_report(graph: &EnhancedLevelGraph) -> Value {
    let validation = validate(graph);
    let simple = simple_twist_data(graph).expect("valid graphs are connected");
    let covering = covering_groups(graph).expect("valid graphs are connected");
    let k = k_group(graph).expect("valid graphs are connected");
    let dims = dim_identity_check(graph);
    let conditions: Vec<Value> = grc_conditions(graph)
        .into_iter()
        .map(|c| {
            json!({
                "level": c.level,
                "component_vertices": c.component_vertices,
                "edges": c.edges,
            })
        })
        .collect();
    let equations: Vec<Value> = torus_equations(graph)
        .into_iter()
        .map(|q| json!({ "levels": q.levels, "edge": q.edge, "exponent": q.exponent }))
        .collect();
    json!({
        "mu": graph.mu().orders(),
        "genus": graph.genus(),
        "validation": serde_json::to_value(&validation).expect("report serializes"),
        "codim": codim(graph),
        "depth": graph.depth(),
        "horizontal_edges": graph.n_horizontal(),
        "prong_rotation_group": group(&prong_rotation_group(graph)),
        "pm_class_count": int(&pm_class_count(graph)),
        "twist_basis": rows(&twist_group_basis(graph)),
        "a": ints(&simple.a),
        "simple_twist_basis": rows(&simple.generators),
        "k_group": group(&k),
        "covering_groups": {
            "h_orders": ints(&covering.h_factors),
            "g": group(&covering.g),
            "k": group(&covering.k),
            "sequence_check": covering.sequence_check,
        },
        "grc_conditions": conditions,
        "grc_dims": grc_space_dims(graph),
        "dimension_identity": {
            "per_level": dims.per_level,
            "lhs": dims.lhs as i64,
            "rhs": dims.rhs as i64,
            "stratum_dim": stratum_dim(graph.mu()),
            "holds": dims.equal,
        },
        "torus_equations": equations,
        "normality": normality(&closure_normality(graph, None)),
        "disorderly_ideal": disorderly(graph),
    })
}

fn list(xs: &[BigInt]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_text(graph: &EnhancedLevelGraph) -> String {
    let r = analysis_report(graph);
    let s = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<22}{v}\n"));
    line("signature", graph.mu().to_string());
    line("codim", s(&r["codim"]));
    line(
        "levels",
        format!(
            "{} below zero, {} horizontal edges",
            graph.depth(),
            graph.n_horizontal()
        ),
    );
    line(
        "prong rotation group",
        s(&r["prong_rotation_group"]["display"]),
    );
    line("|P|", s(&r["prong_rotation_group"]["order"]));
    line("pm classes", s(&r["pm_class_count"]));
    let basis: Vec<String> = twist_group_basis(graph)
        .iter()
        .map(|row| format!("({})", list(row)))
        .collect();
    line("twist basis", basis.join(" "));
    line("a_i", list(&simple_twist_data(graph).expect("connected").a));
    line("K", s(&r["k_group"]["display"]));
    line("G", s(&r["covering_groups"]["g"]["display"]));
    line(
        "|K|*|G| = prod a_i",
        s(&r["covering_groups"]["sequence_check"]),
    );
    for c in r["grc_conditions"].as_array().unwrap() {
        line(
            "grc condition",
            format!(
                "level {} component {} edges {}",
                c["level"], c["component_vertices"], c["edges"]
            ),
        );
    }
    line("grc dims", s(&r["grc_dims"]));
    let d = &r["dimension_identity"];
    line(
        "dimension identity",
        format!(
            "{} = {} ({})",
            d["lhs"],
            d["rhs"],
            if d["holds"] == true { "holds" } else { "fails" }
        ),
    );
    for q in r["torus_equations"].as_array().unwrap() {
        line(
            "torus equation",
            format!("prod r{} = rho{}^{}", q["levels"], q["edge"], q["exponent"]),
        );
    }
    let n = &r["normality"];
    let verdict = match n.get("witness") {
        Some(w) => format!("non_normal, witness {w}"),
        None => s(&n["verdict"]),
    };
    line("normality", verdict);
    let dis = &r["disorderly_ideal"];
    if dis["applicable"] == true {
        line("adjusting parameters", s(&dis["parameters"]));
        line("disorderly ideal", s(&dis["ideal"]));
        line("principal", s(&dis["principal"]));
    } else {
        line(
            "disorderly ideal",
            format!("not applicable: {}", s(&dis["reason"])),
        );
    }
    out
}
