//! Human-readable reports on decorated fans, one line per query.

use crate::decorated_fan::{DecoratedFan, OrbitClosure};
use crate::error::{Error, Result};
use crate::io::{print_fan, print_plain_fan};
use crate::lattice::{format_vectors, IntVector};

/// The queries of `superfan report`, printed in this order.
#[derive(Clone, Debug, Default)]
pub struct ReportRequest {
    pub split: bool,
    pub smooth: bool,
    pub ds: Option<String>,
    pub orbit: Option<String>,
    pub closure: Option<String>,
    pub cspace: bool,
    pub degree: bool,
    pub k_max: u32,
}

fn tuple(v: &IntVector) -> String {
    let parts: Vec<String> = v.entries().iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn ds_line(x: &DecoratedFan, cone: &str, k_max: u32) -> Result<String> {
    let ds = x.ds_invariant(cone, k_max)?;
    let quotient = match &ds.basis {
        Some(basis) => format!(
            "finite, monomial basis {} (dimension {})",
            format_vectors(basis),
            basis.len()
        ),
        None => "infinite".to_string(),
    };
    Ok(format!(
        "ds `{cone}`: S generated by {}; J generated by {}; A0/J {quotient}",
        format_vectors(&ds.semigroup_generators),
        format_vectors(&ds.ideal_generators)
    ))
}

pub fn orbit_line(x: &DecoratedFan, cone: &str) -> Result<String> {
    let r = x.orbit_stabilizer(cone)?;
    Ok(format!(
        "orbit `{cone}`: stab = {}; orbit = {}; {}",
        r.stabilizer_label(),
        r.orbit_label(),
        r.branch
    ))
}

pub fn closure_block(x: &DecoratedFan, cone: &str) -> Result<String> {
    let (kind, body) = match x.orbit_closure(cone)? {
        OrbitClosure::Even(fan) => ("toric variety", print_plain_fan(&fan)),
        OrbitClosure::Super(y) => ("toric supervariety", print_fan(&y)),
    };
    let indented: Vec<String> = body.lines().map(|l| format!("  {l}")).collect();
    Ok(format!("closure `{cone}`: {kind}\n{}", indented.join("\n")))
}

pub fn cspace_line(x: &DecoratedFan) -> Result<String> {
    let space = x.admissible_c_space()?;
    let parts: Vec<String> = space.integer_basis().iter().map(tuple).collect();
    Ok(format!("cspace: basis {{{}}}", parts.join(", ")))
}

pub fn degree_line(x: &DecoratedFan) -> Result<String> {
    let d = x.degree()?;
    Ok(format!("degree: O({d})"))
}

/// Runs every requested query. Queries that do not apply to `x` print
/// `not applicable` instead of failing the whole report.
pub fn render(x: &DecoratedFan, req: &ReportRequest) -> Result<String> {
    let mut lines = Vec::new();
    let soften = |name: &str, r: Result<String>| match r {
        Err(Error::NotApplicable(why)) => Ok(format!("{name}: not applicable ({why})")),
        other => other,
    };
    if req.split {
        lines.push(format!("split: {}", x.is_split()));
    }
    if req.smooth {
        lines.push(format!("smooth: {}", x.is_smooth()));
    }
    if let Some(c) = &req.ds {
        lines.push(ds_line(x, c, req.k_max)?);
    }
    if let Some(c) = &req.orbit {
        lines.push(orbit_line(x, c)?);
    }
    if let Some(c) = &req.closure {
        lines.push(closure_block(x, c)?);
    }
    if req.cspace {
        lines.push(cspace_line(x)?);
    }
    if req.degree {
        lines.push(soften("degree", degree_line(x))?);
    }
    Ok(lines.join("\n"))
}
