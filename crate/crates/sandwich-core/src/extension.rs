//! Step-by-step construction of sandwiched linear extensions.
//!
//! Starting from `f0` on `M`, directions outside the current subspace are
//! adjoined one at a time. For each direction `x0` the engine computes the
//! window of admissible values for the new coefficient and picks one by
//! policy. Two windows appear in this module and they are not the same
//! thing:
//!
//! * [`interval_bounds`] is the classical one-step window: the values `xi`
//!   for which the extended functional stays between `P` and `S` *on the
//!   enlarged subspace*. Its four endpoints come from the two bounds
//!   separately (`[a, b]` from the `S` side, `[d, c]` from the `P` side).
//! * [`extend_full`] steps instead through the *continuation* window: the
//!   values `xi` for which a full sandwiched extension still exists. This
//!   window is the projection onto `x0` of the sandwiched functionals that
//!   agree with the data so far; it can be strictly smaller than the
//!   one-step window, and stepping through the larger window can dead-end
//!   even though condition "4.1" holds. Using the continuation window makes
//!   the construction independent of both the direction order and the value
//!   policy, which is exactly the guarantee the engine promises.
//!
//! Restricting the whole construction to a target subspace is handled by
//! rewriting the problem in orthonormal coordinates of the target, running
//! the full-space engine there, and mapping the result back.

use std::cell::RefCell;

use serde_json::{json, Value};

use crate::error::Error;
use crate::functional::{FunctionalClass, FunctionalForm, FunctionalSpec, LinearFunctional};
use crate::infconv::{check_condition_41, CheckOptions, HullPairLp};
use crate::lp::{solve, LPOutcome, LPProblem, VarBound};
use crate::minimize::{extrapolate_limit, minimize_over_boxes, BoxSearchOutcome};
use crate::sample::VectorSampler;
use crate::subspace::{PartialLinearFunctional, Subspace};
use crate::vector::{Matrix, Vector};

/// How to pick the new coefficient inside a feasible window.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum XiPolicy {
    #[default]
    Midpoint,
    Low,
    High,
}

impl XiPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            XiPolicy::Midpoint => "midpoint",
            XiPolicy::Low => "low",
            XiPolicy::High => "high",
        }
    }
}

impl std::str::FromStr for XiPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "midpoint" => Ok(XiPolicy::Midpoint),
            "low" => Ok(XiPolicy::Low),
            "high" => Ok(XiPolicy::High),
            other => Err(Error::InvalidInput(format!(
                "unknown xi policy {other:?}, expected midpoint, low or high"
            ))),
        }
    }
}

/// Windows narrower than this collapse to their midpoint regardless of policy.
const XI_DEGENERATE_TOL: f64 = 1e-9;
/// Windows empty by more than this are infeasible; smaller inversions are
/// treated as degenerate.
const XI_FEASIBILITY_TOL: f64 = 1e-9;

/// One-step window data along a direction. `[a, b]` bounds the coefficient
/// from the sublinear side, `[d, c]` from the superlinear side; the feasible
/// window is their intersection. Empty sides are encoded by `a = +inf,
/// b = -inf` (and likewise `d, c`).
#[derive(Clone, Debug)]
pub struct ExtensionInterval {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub direction: Vector,
}

impl ExtensionInterval {
    pub fn feasible_lo(&self) -> f64 {
        self.a.max(self.d)
    }

    pub fn feasible_hi(&self) -> f64 {
        self.b.min(self.c)
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_lo() - self.feasible_hi() <= XI_FEASIBILITY_TOL
    }
}

/// Pick a coefficient inside the window. An empty window is an
/// `InfeasibleExtension` error carrying the endpoints. Near-degenerate
/// windows collapse to the midpoint; a one-sided window falls back to its
/// finite endpoint.
pub fn choose_xi(interval: &ExtensionInterval, policy: XiPolicy) -> Result<f64, Error> {
    pick_xi(interval, policy).ok_or_else(|| {
        let lo = interval.feasible_lo();
        let hi = interval.feasible_hi();
        Error::InfeasibleExtension {
            step: 0,
            lo,
            hi,
            gap: lo - hi,
            bounds: [interval.a, interval.b, interval.c, interval.d],
            trace: Vec::new(),
        }
    })
}

fn pick_xi(interval: &ExtensionInterval, policy: XiPolicy) -> Option<f64> {
    let lo = interval.feasible_lo();
    let hi = interval.feasible_hi();
    if lo - hi > XI_FEASIBILITY_TOL {
        return None;
    }
    if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
        return Some(0.0);
    }
    let lo_f = if lo.is_finite() { lo } else { hi };
    let hi_f = if hi.is_finite() { hi } else { lo };
    let hi_c = hi_f.max(lo_f);
    if hi_c - lo_f < XI_DEGENERATE_TOL {
        return Some(0.5 * (lo_f + hi_c));
    }
    Some(match policy {
        XiPolicy::Midpoint => 0.5 * (lo_f + hi_c),
        XiPolicy::Low => lo_f,
        XiPolicy::High => hi_c,
    })
}

/// One adjoined direction of a finished or failed construction.
#[derive(Clone, Debug)]
pub struct ExtensionStep {
    pub direction: Vector,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub xi: f64,
}

impl ExtensionStep {
    pub fn to_json(&self) -> Value {
        json!({
            "x0": self.direction.as_slice(),
            "a": finite_or_tag(self.a),
            "b": finite_or_tag(self.b),
            "c": finite_or_tag(self.c),
            "d": finite_or_tag(self.d),
            "xi": self.xi,
        })
    }
}

fn finite_or_tag(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v < 0.0 {
        json!("-inf")
    } else {
        json!("inf")
    }
}

/// A constructed extension together with its verification margins. All
/// margins are worst-case over the verification samples; negative values
/// mean a violation of that size.
#[derive(Clone, Debug)]
pub struct SandwichCertificate {
    pub functional: LinearFunctional,
    /// Worst `|L(b_k) - f0(b_k)|` over the basis of `M`, relative.
    pub restriction_residual: f64,
    /// Worst `S(x) - L(x)` over the verification samples.
    pub margin_s: f64,
    /// Worst `L(x) - P(x)` over the verification samples.
    pub margin_p: f64,
    /// The same two bounds re-checked through the reflection identities
    /// `L(x) <= -P(-x)` and `L(x) >= -S(-x)` on an independent sample
    /// stream.
    pub margin_reflected: f64,
    pub trace: Vec<ExtensionStep>,
}

impl SandwichCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "L": self.functional.coeffs.as_slice(),
            "residual": self.restriction_residual,
            "margin_S": self.margin_s,
            "margin_P": self.margin_p,
            "margin_reflected": self.margin_reflected,
            "trace": self.trace.iter().map(ExtensionStep::to_json).collect::<Vec<_>>(),
        })
    }
}

/// The classical one-step window of Lemma-style bounds along `direction`:
/// `[a, b]` from the sublinear side, `[d, c]` from the superlinear side.
/// Exact linear programs for polyhedral pairs, seeded descents otherwise;
/// the trivial-subspace case is evaluated in closed form.
pub fn interval_bounds(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    f0: &PartialLinearFunctional,
    direction: &Vector,
    opts: &CheckOptions,
) -> Result<ExtensionInterval, Error> {
    let dim = validate_inputs(s, p, f0)?;
    direction.check_dim(dim)?;
    // Directions numerically this close to M make the window meaningless:
    // both endpoints degenerate to f0 values plus noise.
    let (_, residual) = f0.subspace().membership(direction);
    if residual < 1e-6 {
        return Err(Error::DirectionInSubspace { residual });
    }

    if f0.subspace().rank() == 0 {
        // Only y = 0 contributes to each bound.
        let neg = -direction;
        return Ok(ExtensionInterval {
            a: -s.eval(&neg),
            b: s.eval(direction),
            c: -p.eval(&neg),
            d: p.eval(direction),
            direction: direction.clone(),
        });
    }

    if s.is_polyhedral() && p.is_polyhedral() {
        let (a, b) = trace_window_exact(s.generators().unwrap(), f0, direction)?;
        let (d, c) = trace_window_exact(p.generators().unwrap(), f0, direction)?;
        return Ok(ExtensionInterval {
            a,
            b,
            c,
            d,
            direction: direction.clone(),
        });
    }

    // Numeric path: each endpoint is an independent descent over the
    // coordinates of M, extrapolated across the last two radii.
    let m = f0.subspace();
    let w = f0.ortho_values();
    let k = m.rank();
    let q: Vec<Vector> = m.orthonormal_basis().to_vec();
    let buf = RefCell::new(vec![0.0; dim]);
    let eval_bound = |shift: &Vector, sign_shift: f64, spec: &FunctionalSpec, salt: u64| -> f64 {
        // min over t of spec(sign_shift * shift + y(t)) - f0(y(t)).
        let objective = |t: &[f64]| -> f64 {
            let mut y = buf.borrow_mut();
            for (yd, sd) in y.iter_mut().zip(shift.iter()) {
                *yd = sign_shift * sd;
            }
            for (tk, qk) in t.iter().zip(&q) {
                for (yd, qd) in y.iter_mut().zip(qk.iter()) {
                    *yd += tk * qd;
                }
            }
            let fy: f64 = t.iter().zip(&w).map(|(a, b)| a * b).sum();
            spec.eval_slice(&y) - fy
        };
        let search = opts.search.clone().with_seed(opts.seed ^ salt);
        limit_of(minimize_over_boxes(k, objective, &search))
    };
    // b = inf_y S(x0 + y) - f0(y); a = -inf_y [S(y - x0) - f0(y)].
    let b = eval_bound(direction, 1.0, s, 0x0b);
    let a = -eval_bound(direction, -1.0, s, 0x0a);
    // The superlinear side reduces to the same two descents through the
    // reflection S'(u) = -P(-u) and the substitution y -> -y, which leaves
    // the subspace invariant: c = inf_y [f0(y) - P(y - x0)] becomes
    // inf_y [S'(x0 + y) - f0(y)], and d mirrors a.
    let sp = p.dual_negate();
    let c = eval_bound(direction, 1.0, &sp, 0x0c);
    let d = -eval_bound(direction, -1.0, &sp, 0x0d);
    Ok(ExtensionInterval {
        a,
        b,
        c,
        d,
        direction: direction.clone(),
    })
}

/// Best value of a descent; divergence becomes `-inf`. Extrapolation only
/// applies to limit-only descents, recognizable by a final boundary
/// minimizer; interior minima are already converged.
fn limit_of(out: BoxSearchOutcome) -> f64 {
    if out.diverging {
        return f64::NEG_INFINITY;
    }
    if !out.on_final_boundary {
        return out.value;
    }
    let mut running = out.per_radius;
    for i in 1..running.len() {
        running[i] = running[i].min(running[i - 1]);
    }
    match running.len() {
        0 => out.value,
        1 => running[0],
        n => extrapolate_limit(running[n - 2], running[n - 1]),
    }
}

/// Min and max of `<alpha, direction>` over the hull members of `gens`
/// agreeing with `f0` on `M`. An empty program returns `(inf, -inf)`.
fn trace_window_exact(
    gens: &[Vector],
    f0: &PartialLinearFunctional,
    direction: &Vector,
) -> Result<(f64, f64), Error> {
    let k = gens.len();
    let mut base = LPProblem::minimize(vec![0.0; k])
        .with_bounds(vec![VarBound::nonnegative(); k])
        .with_eq(vec![1.0; k], 1.0);
    for (bvec, &val) in f0.subspace().basis().iter().zip(f0.basis_values()) {
        let row = gens.iter().map(|g| g.dot(bvec)).collect();
        base = base.with_eq(row, val);
    }
    let obj: Vec<f64> = gens.iter().map(|g| g.dot(direction)).collect();
    let mut lp_min = base.clone();
    lp_min.objective.copy_from_slice(&obj);
    let lo = match solve(&lp_min)? {
        LPOutcome::Optimal { value, .. } => value,
        LPOutcome::Infeasible { .. } => return Ok((f64::INFINITY, f64::NEG_INFINITY)),
        LPOutcome::Unbounded => {
            return Err(Error::SolverBreakdown(
                "trace window unbounded over compact weights".into(),
            ))
        }
    };
    let mut lp_max = base;
    for (slot, v) in lp_max.objective.iter_mut().zip(&obj) {
        *slot = -v;
    }
    let hi = match solve(&lp_max)? {
        LPOutcome::Optimal { value, .. } => -value,
        LPOutcome::Infeasible { .. } => return Ok((f64::INFINITY, f64::NEG_INFINITY)),
        LPOutcome::Unbounded => {
            return Err(Error::SolverBreakdown(
                "trace window unbounded over compact weights".into(),
            ))
        }
    };
    Ok((lo, hi))
}

/// Adjoin one direction with a chosen coefficient, enlarging the prescribed
/// subspace by `span{x0}`. The caller picks `xi`, normally through
/// [`interval_bounds`] and [`choose_xi`]; with `xi` inside the one-step
/// window the result stays between `P` and `S` on the enlarged subspace,
/// though unlike [`extend_full`] nothing promises that later steps remain
/// feasible.
pub fn extend_one_step(
    f0: &PartialLinearFunctional,
    x0: &Vector,
    xi: f64,
) -> Result<PartialLinearFunctional, Error> {
    x0.check_dim(f0.ambient_dim())?;
    let (inside, residual) = f0.subspace().membership(x0);
    if inside {
        return Err(Error::DirectionInSubspace { residual });
    }
    if !xi.is_finite() {
        return Err(Error::InvalidInput(format!(
            "the new coefficient must be finite, got {xi}"
        )));
    }
    f0.extended(x0, xi)
}

/// The continuation window along `direction`: values of the new coefficient
/// for which a full sandwiched extension still exists. Exact for polyhedral
/// pairs; the numeric form searches jointly over the current subspace and
/// the whole space, extrapolating both endpoints.
fn continuation_window(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    f: &PartialLinearFunctional,
    direction: &Vector,
    opts: &CheckOptions,
    salt: u64,
) -> Result<(f64, f64), Error> {
    let dim = s.dim();
    if s.is_polyhedral() && p.is_polyhedral() {
        let hull = HullPairLp::new(s, p)?;
        let build = |objective_at: &Vector| -> LPProblem {
            let mut lp = hull.base(Some(objective_at));
            for e in HullPairLp::full_space_dirs(dim) {
                lp = lp.with_eq(hull.perp_row(&e), 0.0);
            }
            for (bvec, &val) in f.subspace().basis().iter().zip(f.basis_values()) {
                lp = lp.with_eq(hull.alpha_row(bvec), val);
            }
            lp
        };
        // base(Some(v)) minimizes -<alpha, v>, so the optimum is -max<alpha, v>.
        let hi = match solve(&build(direction))? {
            LPOutcome::Optimal { value, .. } => -value,
            LPOutcome::Infeasible { .. } => return Ok((f64::INFINITY, f64::NEG_INFINITY)),
            LPOutcome::Unbounded => {
                return Err(Error::SolverBreakdown(
                    "continuation window unbounded over compact weights".into(),
                ))
            }
        };
        let neg = -direction;
        let lo = match solve(&build(&neg))? {
            LPOutcome::Optimal { value, .. } => value,
            LPOutcome::Infeasible { .. } => return Ok((f64::INFINITY, f64::NEG_INFINITY)),
            LPOutcome::Unbounded => {
                return Err(Error::SolverBreakdown(
                    "continuation window unbounded over compact weights".into(),
                ))
            }
        };
        return Ok((lo, hi));
    }

    // Numeric: hi = inf over y in M, u anywhere of S(y + x0 + u) - P(u) - f(y),
    // lo the mirror image with x0 negated and the sign flipped.
    let m = f.subspace();
    let k = m.rank();
    let w = f.ortho_values();
    let q: Vec<Vector> = m.orthonormal_basis().to_vec();
    let xs: Vec<f64> = direction.as_slice().to_vec();
    let buf = RefCell::new(vec![0.0; dim]);
    let one_side = |sign: f64, endpoint_salt: u64| -> f64 {
        let objective = |vars: &[f64]| -> f64 {
            let (t, u) = vars.split_at(k);
            let mut y = buf.borrow_mut();
            y.copy_from_slice(u);
            let pu = p.eval_slice(&y);
            for (yd, xd) in y.iter_mut().zip(&xs) {
                *yd += sign * xd;
            }
            for (tk, qk) in t.iter().zip(&q) {
                for (yd, qd) in y.iter_mut().zip(qk.iter()) {
                    *yd += tk * qd;
                }
            }
            let fy: f64 = t.iter().zip(&w).map(|(a, b)| a * b).sum();
            s.eval_slice(&y) - pu - fy
        };
        let search = opts
            .search
            .clone()
            .with_seed(opts.seed ^ (0xc0_0000 + salt * 4 + endpoint_salt));
        limit_of(minimize_over_boxes(k + dim, objective, &search))
    };
    let hi = one_side(1.0, 0);
    let lo = -one_side(-1.0, 1);
    Ok((lo, hi))
}

fn validate_inputs(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    f0: &PartialLinearFunctional,
) -> Result<usize, Error> {
    if s.class() != FunctionalClass::Sublinear {
        return Err(Error::InvalidInput(
            "the upper bound must be tagged sublinear".into(),
        ));
    }
    if p.class() != FunctionalClass::Superlinear {
        return Err(Error::InvalidInput(
            "the lower bound must be tagged superlinear".into(),
        ));
    }
    if s.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: p.dim(),
        });
    }
    if f0.ambient_dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: f0.ambient_dim(),
        });
    }
    Ok(s.dim())
}

/// Construct a linear functional sandwiched between `P` and `S` that agrees
/// with `f0` on its subspace, defined on `target` (the whole space when
/// `None`). Directions are taken from `order` when given, then from the
/// target's basis; directions already spanned are skipped. Fails with
/// [`Error::ConditionFailed`] when condition "4.1" does not hold and with
/// [`Error::InfeasibleExtension`] when a window collapses despite it, which
/// only numeric noise can cause.
pub fn extend_full(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    f0: &PartialLinearFunctional,
    target: Option<&Subspace>,
    order: Option<&[Vector]>,
    policy: XiPolicy,
    opts: &CheckOptions,
) -> Result<SandwichCertificate, Error> {
    let dim = validate_inputs(s, p, f0)?;

    match target {
        Some(e) if e.rank() < dim => {
            if e.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.ambient_dim(),
                });
            }
            for bvec in f0.subspace().basis() {
                if !e.contains(bvec) {
                    return Err(Error::InvalidInput(
                        "the base subspace must lie inside the restriction target".into(),
                    ));
                }
            }
            // Rewrite everything in orthonormal coordinates of the target.
            let s_red = reduce_to_subspace(s, e)?;
            let p_red = reduce_to_subspace(p, e)?;
            let m_red = Subspace::new(
                e.rank(),
                f0.subspace()
                    .basis()
                    .iter()
                    .map(|bvec| Vector::new(e.ortho_coords(bvec)))
                    .collect(),
            )?;
            let f0_red = PartialLinearFunctional::new(m_red, f0.basis_values().to_vec())?;
            let order_red: Option<Vec<Vector>> = match order {
                None => None,
                Some(cands) => {
                    let mut reduced = Vec::with_capacity(cands.len());
                    for cand in cands {
                        if !e.contains(cand) {
                            return Err(Error::InvalidInput(
                                "an ordering direction lies outside the restriction target".into(),
                            ));
                        }
                        reduced.push(Vector::new(e.ortho_coords(cand)));
                    }
                    Some(reduced)
                }
            };
            let cert = extend_full(
                &s_red,
                &p_red,
                &f0_red,
                None,
                order_red.as_deref(),
                policy,
                opts,
            )?;
            // Map the functional and the trace back to ambient coordinates.
            // The sampled margins certify the sandwich on the target, so
            // the reduced-space values carry over unchanged.
            let SandwichCertificate {
                functional: reduced,
                margin_s,
                margin_p,
                margin_reflected,
                trace: reduced_trace,
                ..
            } = cert;
            let functional = LinearFunctional::new(e.point_from_ortho(reduced.coeffs.as_slice()));
            let trace = reduced_trace
                .into_iter()
                .map(|step| ExtensionStep {
                    direction: e.point_from_ortho(step.direction.as_slice()),
                    ..step
                })
                .collect();
            let restriction_residual = restriction_residual(&functional, f0);
            return Ok(SandwichCertificate {
                functional,
                restriction_residual,
                margin_s,
                margin_p,
                margin_reflected,
                trace,
            });
        }
        _ => {}
    }

    // Full-space construction. Re-verify feasibility before stepping so a
    // collapsed window can only mean numeric trouble, never a missed check.
    let gate = check_condition_41(s, p, f0, None, opts)?;
    if !gate.holds {
        return Err(Error::ConditionFailed { report: gate });
    }

    let mut f = f0.clone();
    let mut trace: Vec<ExtensionStep> = Vec::new();
    let basis_candidates: Vec<Vector> = (0..dim).map(|i| Vector::basis(dim, i)).collect();
    let candidates: Vec<&Vector> = match order {
        Some(cands) => cands.iter().chain(basis_candidates.iter()).collect(),
        None => basis_candidates.iter().collect(),
    };

    for cand in candidates {
        if f.subspace().rank() == dim {
            break;
        }
        cand.check_dim(dim)?;
        if f.subspace().contains(cand) {
            continue;
        }
        let salt = trace.len() as u64;
        let (lo, hi) = continuation_window(s, p, &f, cand, opts, salt)?;
        let interval = ExtensionInterval {
            a: lo,
            b: hi,
            c: hi,
            d: lo,
            direction: cand.clone(),
        };
        let Some(xi) = pick_xi(&interval, policy) else {
            return Err(Error::InfeasibleExtension {
                step: trace.len(),
                lo,
                hi,
                gap: lo - hi,
                bounds: [lo, hi, hi, lo],
                trace,
            });
        };
        f = f.extended(cand, xi)?;
        trace.push(ExtensionStep {
            direction: cand.clone(),
            a: lo,
            b: hi,
            c: hi,
            d: lo,
            xi,
        });
    }

    if f.subspace().rank() < dim {
        return Err(Error::InvalidInput(
            "completion directions failed to span the space".into(),
        ));
    }

    let functional = LinearFunctional::new(f.coefficient_vector());
    Ok(certify(s, p, f0, functional, trace, opts))
}

/// Worst relative agreement of `l` with `f0` on the basis of `M`.
fn restriction_residual(l: &LinearFunctional, f0: &PartialLinearFunctional) -> f64 {
    f0.subspace()
        .basis()
        .iter()
        .zip(f0.basis_values())
        .map(|(bvec, &val)| (l.coeffs.dot(bvec) - val).abs() / (1.0 + val.abs()))
        .fold(0.0, f64::max)
}

/// Verify a candidate functional against the data: agreement with `f0` on
/// the basis of `M` and sampled sandwich margins on seeded streams. Never
/// fails; violations show up as negative margins or a large residual in the
/// returned certificate. A dimension mismatch is recorded as an infinitely
/// bad certificate.
pub fn verify_sandwich(
    l: &LinearFunctional,
    f0: &PartialLinearFunctional,
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    count: usize,
    seed: u64,
) -> SandwichCertificate {
    let dim = s.dim();
    if l.coeffs.dim() != dim || p.dim() != dim || f0.ambient_dim() != dim {
        return SandwichCertificate {
            functional: l.clone(),
            restriction_residual: f64::INFINITY,
            margin_s: f64::NEG_INFINITY,
            margin_p: f64::NEG_INFINITY,
            margin_reflected: f64::NEG_INFINITY,
            trace: Vec::new(),
        };
    }
    let (margin_s, margin_p, margin_reflected) = verify_sandwich_margins(l, s, p, count, seed);
    SandwichCertificate {
        restriction_residual: restriction_residual(l, f0),
        functional: l.clone(),
        margin_s,
        margin_p,
        margin_reflected,
        trace: Vec::new(),
    }
}

/// Assemble the certificate for a finished construction, attaching the trace.
fn certify(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    f0: &PartialLinearFunctional,
    functional: LinearFunctional,
    trace: Vec<ExtensionStep>,
    opts: &CheckOptions,
) -> SandwichCertificate {
    let mut cert = verify_sandwich(&functional, f0, s, p, 10_000, opts.seed ^ 0xce27);
    cert.trace = trace;
    cert
}

/// Worst-case sandwich margins of a candidate functional over seeded sample
/// streams: `(min S - L, min L - P, min reflected)`. The reflected margin
/// re-checks both bounds through `L(x) <= -P(-x)` and `L(x) >= -S(-x)` on an
/// independent stream.
pub fn verify_sandwich_margins(
    l: &LinearFunctional,
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    count: usize,
    seed: u64,
) -> (f64, f64, f64) {
    let dim = s.dim();
    let mut direct = VectorSampler::new(seed);
    let mut margin_s = f64::INFINITY;
    let mut margin_p = f64::INFINITY;
    for i in 0..count {
        let x = if i < 2 * dim {
            // Signed basis rays first.
            let e = Vector::basis(dim, i / 2);
            if i % 2 == 0 {
                e
            } else {
                -&e
            }
        } else {
            direct.ambient(dim)
        };
        let lx = l.coeffs.dot(&x);
        margin_s = margin_s.min(s.eval(&x) - lx);
        margin_p = margin_p.min(lx - p.eval(&x));
    }
    let mut reflected = VectorSampler::new(seed ^ 0x0f1ec7ed);
    let mut margin_r = f64::INFINITY;
    for _ in 0..count {
        let x = reflected.ambient(dim);
        let neg = -&x;
        let lx = l.coeffs.dot(&x);
        margin_r = margin_r.min(-p.eval(&neg) - lx);
        margin_r = margin_r.min(lx + s.eval(&neg));
    }
    (margin_s, margin_p, margin_r)
}

/// Classical construction: extend the value `S(x0)` at `x0` to a linear
/// functional dominated by `S` everywhere. The superlinear floor is the
/// reflection `-S(-x)`, which every dominated functional satisfies anyway,
/// so the sandwich engine applies unchanged. With `x0 = None` the seed is
/// the trivial functional and the result is any functional dominated by `S`.
pub fn classical_extend_sublinear(
    s: &FunctionalSpec,
    x0: Option<&Vector>,
    policy: XiPolicy,
    opts: &CheckOptions,
) -> Result<SandwichCertificate, Error> {
    if s.class() != FunctionalClass::Sublinear {
        return Err(Error::InvalidInput(
            "classical domination requires a sublinear bound".into(),
        ));
    }
    let dim = s.dim();
    let p = s.dual_negate();
    let f0 = seed_functional(dim, x0, |v| s.evaluate(v))?;
    extend_full(s, &p, &f0, None, None, policy, opts)
}

/// Mirror construction: extend the value `P(x0)` at `x0` to a linear
/// functional dominating `P` everywhere, using the reflection `-P(-x)` as
/// the sublinear ceiling.
pub fn classical_extend_superlinear(
    p: &FunctionalSpec,
    x0: Option<&Vector>,
    policy: XiPolicy,
    opts: &CheckOptions,
) -> Result<SandwichCertificate, Error> {
    if p.class() != FunctionalClass::Superlinear {
        return Err(Error::InvalidInput(
            "classical minorization requires a superlinear bound".into(),
        ));
    }
    let dim = p.dim();
    let s = p.dual_negate();
    let f0 = seed_functional(dim, x0, |v| p.evaluate(v))?;
    extend_full(&s, p, &f0, None, None, policy, opts)
}

fn seed_functional(
    dim: usize,
    x0: Option<&Vector>,
    value_at: impl Fn(&Vector) -> Result<f64, Error>,
) -> Result<PartialLinearFunctional, Error> {
    match x0 {
        None => Ok(PartialLinearFunctional::trivial(dim)),
        Some(v) => {
            v.check_dim(dim)?;
            if v.is_zero(1e-12) {
                return Ok(PartialLinearFunctional::trivial(dim));
            }
            let m = Subspace::new(dim, vec![v.clone()])?;
            let val = value_at(v)?;
            PartialLinearFunctional::new(m, vec![val])
        }
    }
}

/// Rewrite a functional in orthonormal coordinates of a subspace, preserving
/// its form and class.
fn reduce_to_subspace(spec: &FunctionalSpec, e: &Subspace) -> Result<FunctionalSpec, Error> {
    let q = e.orthonormal_basis();
    let reduce_vec = |v: &Vector| Vector::new(q.iter().map(|qk| qk.dot(v)).collect());
    match spec.form() {
        FunctionalForm::MaxLinear { generators } => {
            FunctionalSpec::max_linear(generators.iter().map(reduce_vec).collect())
        }
        FunctionalForm::MinLinear { generators } => {
            FunctionalSpec::min_linear(generators.iter().map(reduce_vec).collect())
        }
        FunctionalForm::NormPlusLinear {
            linear_part,
            matrix_part,
        } => FunctionalSpec::norm_plus_linear(
            reduce_vec(linear_part),
            reduce_matrix(matrix_part, q),
        ),
        FunctionalForm::LinearMinusNorm {
            linear_part,
            matrix_part,
        } => FunctionalSpec::linear_minus_norm(
            reduce_vec(linear_part),
            reduce_matrix(matrix_part, q),
        ),
    }
}

fn reduce_matrix(g: &Matrix, q: &[Vector]) -> Matrix {
    let rows = g
        .rows()
        .iter()
        .map(|row| {
            q.iter()
                .map(|qk| row.iter().zip(qk.iter()).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("reduced matrix keeps its row count")
}
