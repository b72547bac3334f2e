use std::fmt;

use avgdeg_core::graph::{forest_decomposition, orient};
use avgdeg_core::validators::{
    cn_verdict, moments_with_alpha, sqrt2m_verdict, AlphaCertificate, AlphaSource,
};
use avgdeg_core::Graph;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub pass: bool,
    pub note: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.lhs,
            self.relation,
            self.rhs
        )?;
        if let Some(note) = &self.note {
            write!(f, "  ({note})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub m: usize,
    pub alpha: AlphaCertificate,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the exact lemma and moment checks. Beyond `max_exact_n` vertices the
/// arboricity is replaced by the degeneracy, an upper bound.
pub fn validate_graph(g: &Graph, max_exact_n: usize) -> ValidationReport {
    let alpha = AlphaCertificate::best_available(g, max_exact_n);
    let note = (alpha.source == AlphaSource::Degeneracy).then(|| {
        format!("n = {} > {max_exact_n}: alpha is the degeneracy upper bound", g.n())
    });
    let a = alpha.value;
    let mut checks = Vec::new();

    let cn = cn_verdict(g, alpha);
    checks.push(Check {
        name: "min-degree edge sum",
        lhs: format!("sum min(d_u,d_v) = {}", cn.cn_sum),
        relation: "<=",
        rhs: format!("2*m*alpha = 2*{}*{} = {}", cn.m, a, cn.bound),
        pass: cn.pass,
        note: note.clone(),
    });

    let sq = sqrt2m_verdict(g, alpha);
    checks.push(Check {
        name: "arboricity vs sqrt(2m)",
        lhs: format!("alpha^2 = {}", a * a),
        relation: "<=",
        rhs: format!("2m = {}", sq.two_m),
        pass: sq.alpha_pass,
        note: note.clone(),
    });
    checks.push(Check {
        name: "max out-degree vs sqrt(2m)",
        lhs: format!("max d+ = {}", sq.max_out_degree),
        relation: "<=",
        rhs: format!("floor(sqrt(2m)) = {}", sq.floor_sqrt_two_m),
        pass: sq.out_degree_pass,
        note: None,
    });

    let mo = moments_with_alpha(g, Some(a));
    checks.push(Check {
        name: "sample mean",
        lhs: format!("E[X] = {}", mo.e_x),
        relation: "==",
        rhs: format!("d = {}", mo.d),
        pass: mo.mean_matches_average_degree(),
        note: None,
    });
    let bound = mo.variance_bound(a);
    checks.push(Check {
        name: "sample variance",
        lhs: format!("Var[X] = {}", mo.var_x),
        relation: "<=",
        rhs: format!("8*d*alpha = {bound}"),
        pass: mo.var_x <= bound,
        note: note.clone(),
    });

    let fd = forest_decomposition(g);
    let max_out = orient(g).max_out_degree();
    checks.push(Check {
        name: "forest labeling",
        lhs: format!("labels = {}", fd.num_labels),
        relation: "==",
        rhs: format!("max d+ = {max_out}, every label class acyclic"),
        pass: fd.num_labels == max_out && fd.all_classes_acyclic(g.n()),
        note: None,
    });

    ValidationReport { n: g.n(), m: g.m(), alpha, checks }
}
