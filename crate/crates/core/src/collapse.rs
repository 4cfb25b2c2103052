//! Elementary collapses, the peeling procedure that removes every top and
//! next-to-top face of the closure of at most `d` small simplices, and the
//! boundary certificate for cycles on such closures.

use std::collections::{BTreeSet, VecDeque};

use crate::chain::{boundary, Chain};
use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::linalg::{solve, SparseMatrix};
use crate::simplex::{incidence_sign, Simplex};

/// Faces of dimension `i` lying in exactly one face of dimension `i + 1`.
pub fn exposed_faces(k: &Complex, i: isize) -> Vec<Simplex> {
    k.faces(i)
        .iter()
        .filter(|s| k.cofaces(s).count() == 1)
        .cloned()
        .collect()
}

/// Removal of the free face `free` together with its unique coface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseStep {
    pub free: Simplex,
    pub coface: Simplex,
}

impl CollapseStep {
    /// Dimension of the free face.
    pub fn dim(&self) -> isize {
        self.free.dim()
    }
}

#[derive(Clone, Debug)]
pub struct CollapseCertificate {
    pub d: usize,
    pub start: Complex,
    pub steps: Vec<CollapseStep>,
    pub residual: Complex,
}

fn apply_step(k: &mut Complex, step: &CollapseStep) -> Result<()> {
    let cofaces: Vec<Simplex> = k.cofaces(&step.free).collect();
    if cofaces != [step.coface.clone()] || k.has_coface(&step.coface) {
        return Err(Error::InternalInconsistency(format!(
            "{} is not a free face of {} here",
            step.free, step.coface
        )));
    }
    k.remove(&step.coface);
    k.remove(&step.free);
    Ok(())
}

/// Replays `steps` from `start`, failing on the first face that is not free.
pub fn replay(start: &Complex, steps: &[CollapseStep]) -> Result<Complex> {
    let mut k = start.clone();
    for step in steps {
        apply_step(&mut k, step)?;
    }
    Ok(k)
}

fn check_small_set(d: usize, set: &[Simplex]) -> Result<()> {
    if d < 2 {
        return Err(Error::PreconditionViolated(
            "full elimination needs d >= 2; at d = 1 surviving vertices cannot be collapsed".into(),
        ));
    }
    if set.len() > d {
        return Err(Error::PreconditionViolated(format!(
            "{} simplices exceed the bound d = {d}",
            set.len()
        )));
    }
    if let Some(s) = set.iter().find(|s| s.dim() > d as isize || s.is_empty()) {
        return Err(Error::PreconditionViolated(format!(
            "{s} is empty or has dimension above {d}"
        )));
    }
    Ok(())
}

/// Collapses away every `d`- and `(d-1)`-face of the closure of `set`, where
/// `set` holds at most `d` simplices of dimension at most `d` and `d >= 2`.
pub fn collapse_small_set(d: usize, set: &[Simplex]) -> Result<CollapseCertificate> {
    check_small_set(d, set)?;
    let n = set.iter().map(Simplex::max_vertex).max().unwrap_or(0);
    let start = Complex::closure(set.iter().cloned(), n)?;
    let mut k = start.clone();
    let mut steps = Vec::new();
    let mut remaining: Vec<Simplex> = set.to_vec();
    remaining.sort();
    remaining.dedup();
    let top = d as isize;
    while let Some(pos) = remaining.iter().position(|s| s.dim() == top) {
        let sigma = remaining.remove(pos);
        peel_simplex(&mut k, &sigma, &remaining, &mut steps)?;
    }
    // no d-faces left: every (d-1)-face is maximal and has a facet it alone contains
    let ridges: Vec<Simplex> = k.faces(top - 1).iter().cloned().collect();
    for tau in ridges {
        let free = tau
            .boundary_faces()
            .map(|(_, r)| r)
            .filter(|r| k.cofaces(r).count() == 1)
            .min()
            .ok_or_else(|| Error::InternalInconsistency(format!("{tau} has no exposed facet")))?;
        let step = CollapseStep { free, coface: tau };
        apply_step(&mut k, &step)?;
        steps.push(step);
    }
    if !k.faces(top).is_empty() || !k.faces(top - 1).is_empty() {
        return Err(Error::InternalInconsistency(
            "collapse left top-dimensional faces behind".into(),
        ));
    }
    Ok(CollapseCertificate {
        d,
        start,
        steps,
        residual: k,
    })
}

// Removes `sigma` and its facets not shared with `others`: one collapse of an
// unmarked facet into `sigma`, then a breadth-first sweep over the facet graph
// of the boundary, each move collapsing the shared ridge into the next facet.
fn peel_simplex(
    k: &mut Complex,
    sigma: &Simplex,
    others: &[Simplex],
    steps: &mut Vec<CollapseStep>,
) -> Result<()> {
    let meets: Vec<Simplex> = others.iter().map(|x| sigma.intersection(x)).collect();
    let marked = |f: &Simplex| meets.iter().any(|m| f.is_face_of(m));
    let mut facets: Vec<Simplex> = sigma.boundary_faces().map(|(_, t)| t).collect();
    facets.sort();
    let first =
        facets.iter().find(|t| !marked(t)).cloned().ok_or_else(|| {
            Error::InternalInconsistency(format!("every facet of {sigma} is marked"))
        })?;
    let step = CollapseStep {
        free: first.clone(),
        coface: sigma.clone(),
    };
    apply_step(k, &step)?;
    steps.push(step);

    let mut done: BTreeSet<Simplex> = BTreeSet::from([first.clone()]);
    let mut queue = VecDeque::from([first]);
    while let Some(u) = queue.pop_front() {
        for v in &facets {
            if done.contains(v) || marked(v) {
                continue;
            }
            let ridge = u.intersection(v);
            if marked(&ridge) {
                continue;
            }
            let step = CollapseStep {
                free: ridge,
                coface: v.clone(),
            };
            apply_step(k, &step)?;
            steps.push(step);
            done.insert(v.clone());
            queue.push_back(v.clone());
        }
    }
    Ok(())
}

/// A `d`-chain `U` on the `d`-simplices of `set` with `∂U = z`, for a
/// `(d-1)`-cycle `z` on the closure of at most `d` simplices of dimension at most `d`.
pub fn express_cycle_as_boundary(z: &Chain, set: &[Simplex], d: usize) -> Result<Chain> {
    let field = z.field();
    if z.dim() != d as isize - 1 {
        return Err(Error::DimensionMismatch {
            expected: d as isize - 1,
            found: z.dim(),
        });
    }
    if !boundary(z).is_zero() {
        return Err(Error::PreconditionViolated(
            "input chain is not a cycle".into(),
        ));
    }
    if d == 1 {
        if set.len() > 1 || set.iter().any(|s| s.dim() > 1) {
            return Err(Error::PreconditionViolated(
                "at d = 1 the set is a single simplex of dimension at most 1".into(),
            ));
        }
        let edges: Vec<Simplex> = set.iter().filter(|s| s.dim() == 1).cloned().collect();
        let n = set
            .iter()
            .map(Simplex::max_vertex)
            .max()
            .unwrap_or(0)
            .max(z.max_vertex());
        let closure = Complex::closure(set.iter().cloned(), n)?;
        if z.support().any(|s| !closure.contains(s)) {
            return Err(Error::PreconditionViolated(
                "cycle leaves the closure of the set".into(),
            ));
        }
        let m = SparseMatrix::boundary_of(field, edges);
        return solve(&m, z)
            .map(|u| {
                if u.is_zero() {
                    Chain::zero(1, field)
                } else {
                    u
                }
            })
            .ok_or_else(|| Error::InternalInconsistency("0-cycle is not a boundary".into()));
    }
    let cert = collapse_small_set(d, set)?;
    if z.support().any(|s| !cert.start.contains(s)) {
        return Err(Error::PreconditionViolated(
            "cycle leaves the closure of the set".into(),
        ));
    }
    let mut rest = z.clone();
    let mut u = Chain::zero(d as isize, field);
    for step in &cert.steps {
        if step.dim() == d as isize - 1 {
            let c = rest.coeff(&step.free);
            if c != 0 {
                let a = field.mul(c, field.from_sign(incidence_sign(&step.coface, &step.free)));
                let db = boundary(&Chain::simplex(step.coface.clone(), field));
                rest.axpy(field.neg(a), &db);
                u.add_term(step.coface.clone(), a);
            }
        } else if step.dim() == d as isize - 2 && rest.coeff(&step.coface) != 0 {
            return Err(Error::InternalInconsistency(format!(
                "cycle still uses {} when it is collapsed",
                step.coface
            )));
        }
    }
    if !rest.is_zero() {
        return Err(Error::InternalInconsistency(
            "cycle survives on the residual complex".into(),
        ));
    }
    Ok(u)
}
