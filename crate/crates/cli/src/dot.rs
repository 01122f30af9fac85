use std::fmt::Write;

use folres_core::ResolutionReport;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Divisor graph: one node per component, one edge per corner, and the
/// remaining singularities listed beside their component.
pub fn divisor_dot(report: &ResolutionReport) -> String {
    let mut out = String::from("graph divisor {\n  node [shape=box];\n");
    for c in &report.components {
        let flag = if c.dicritical { "dicritical" } else { "invariant" };
        let notes: Vec<String> = c
            .singularities
            .iter()
            .filter_map(|&p| report.point(p))
            .filter(|p| !p.corner)
            .map(|p| {
                let idx = p.indices.get(&c.id).map_or("-".to_string(), |v| v.to_string());
                escape(&format!("p{} {:?} {}", p.id, p.class, idx))
            })
            .collect();
        let _ = write!(out, "  E{} [label=\"E{} / {} / {}\"", c.id, c.id, c.self_intersection, flag);
        if !notes.is_empty() {
            let _ = write!(out, ", xlabel=\"{}\"", notes.join("\\n"));
        }
        out.push_str("];\n");
    }
    for c in &report.components {
        for k in c.corners.iter().filter(|k| k.neighbor > c.id) {
            let label = report.point(k.point).map_or(String::new(), |p| format!("p{} {:?}", p.id, p.class));
            let _ = writeln!(out, "  E{} -- E{} [label=\"{}\"];", c.id, k.neighbor, escape(&label));
        }
    }
    out.push_str("}\n");
    out
}
