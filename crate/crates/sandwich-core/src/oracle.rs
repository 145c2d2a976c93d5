//! Brute-force reference computations and random instance generation.
//!
//! The grid oracle evaluates the same quantities as the analytic paths by
//! exhaustive search over nested boxes. It is slow and only modestly
//! accurate, which is the point: it shares no code with the linear programs
//! or the descents, so agreement is evidence rather than tautology. A grid
//! can never certify that an infimum is unbounded, so the oracle always
//! reports a finite level and leaves divergence claims to the callers that
//! compare trends.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::extension::ExtensionInterval;
use crate::functional::{FunctionalSpec, LinearFunctional};
use crate::infconv::{Attainment, TLevel, TMethod, TValue};
use crate::subspace::{PartialLinearFunctional, Subspace};
use crate::vector::Vector;

/// Schedule for the exhaustive searches: nested boxes of the given radii,
/// each swept coarsely and then refined by zooming tenfold onto the
/// incumbent for a fixed number of passes at a finer resolution.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    /// Points per axis for the first full sweep of each box.
    pub coarse_points: usize,
    /// Points per axis for the zoomed passes. Falls back to the coarse
    /// count in dimensions where a fine sweep would blow the point budget.
    pub refine_points: usize,
    pub refinement_passes: usize,
    /// Upper bound on points per sweep; dimensions whose coarse sweep needs
    /// more fail with [`Error::GridTooLarge`].
    pub max_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radii: vec![1.0, 10.0, 100.0, 1e3, 1e4, 1e5],
            coarse_points: 51,
            refine_points: 201,
            refinement_passes: 2,
            max_points: 20_000_000,
        }
    }
}

impl GridSpec {
    /// A lighter schedule for wide comparisons in tests. The extra zoom pass
    /// buys back the resolution the smaller sweeps give up.
    pub fn coarse() -> Self {
        GridSpec {
            coarse_points: 21,
            refine_points: 41,
            refinement_passes: 3,
            ..GridSpec::default()
        }
    }

    fn sweep_fits(points: usize, dim: usize, budget: usize) -> bool {
        let mut total: usize = 1;
        for _ in 0..dim {
            total = match total.checked_mul(points) {
                Some(t) if t <= budget => t,
                _ => return false,
            };
        }
        true
    }

    /// Points per axis for the zoomed passes in this dimension.
    fn refine_points_for(&self, dim: usize) -> usize {
        if Self::sweep_fits(self.refine_points, dim, self.max_points) {
            self.refine_points
        } else {
            self.coarse_points
        }
    }

    fn check_dim(&self, dim: usize) -> Result<(), Error> {
        // Eleven points make each tenfold zoom cover its predecessor's
        // incumbent cell; fewer could let the refinement lose the minimum.
        if self.coarse_points < 11 || self.refine_points < 11 {
            return Err(Error::InvalidInput(
                "grids need at least eleven points per axis".into(),
            ));
        }
        if !Self::sweep_fits(self.coarse_points, dim, self.max_points) {
            let mut max = 0;
            let mut cap = self.max_points;
            while cap >= self.coarse_points {
                cap /= self.coarse_points;
                max += 1;
            }
            return Err(Error::GridTooLarge { dim, max });
        }
        Ok(())
    }
}

/// Exhaustive minimum of `objective` over the box `center ± half`.
fn grid_min<F: Fn(&[f64]) -> f64>(
    objective: &F,
    center: &[f64],
    half: f64,
    points: usize,
) -> (f64, Vec<f64>) {
    let dim = center.len();
    if dim == 0 {
        return (objective(&[]), Vec::new());
    }
    let step = 2.0 * half / (points - 1) as f64;
    let mut index = vec![0usize; dim];
    let mut point = vec![0.0; dim];
    let mut best = f64::INFINITY;
    let mut best_point = vec![0.0; dim];
    loop {
        for (pd, (idx, cd)) in point.iter_mut().zip(index.iter().zip(center)) {
            *pd = cd - half + step * *idx as f64;
        }
        let v = objective(&point);
        if v < best {
            best = v;
            best_point.copy_from_slice(&point);
        }
        // Odometer increment over the multi-index.
        let mut carry = 0;
        loop {
            index[carry] += 1;
            if index[carry] < points {
                break;
            }
            index[carry] = 0;
            carry += 1;
            if carry == dim {
                return (best, best_point);
            }
        }
    }
}

/// Simplex polish of the grid incumbent. Axis-aligned grids cannot track a
/// narrow valley running obliquely through the box, and per-axis moves fail
/// there too, since each pays more across the valley than it gains along
/// it. A reflecting simplex elongates along such valleys instead. Standard
/// Nelder-Mead coefficients; each restart rebuilds the simplex around the
/// current incumbent at a tenth of the previous scale.
fn simplex_polish<F: Fn(&[f64]) -> f64>(
    objective: &F,
    at: &mut Vec<f64>,
    best: &mut f64,
    radius: f64,
    scale: f64,
) {
    let dim = at.len();
    if dim == 0 {
        return;
    }
    let reach = |p: &[f64]| {
        let q: Vec<f64> = p.iter().map(|v| v.clamp(-radius, radius)).collect();
        let v = objective(&q);
        (q, v)
    };
    let mut scale = scale;
    for _restart in 0..4 {
        let mut pts: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        pts.push((at.clone(), *best));
        for i in 0..dim {
            let mut p = at.clone();
            p[i] += if p[i] + scale <= radius { scale } else { -scale };
            pts.push(reach(&p));
        }
        for _iter in 0..400 * dim {
            pts.sort_by(|a, b| a.1.total_cmp(&b.1));
            let spread = pts[dim].1 - pts[0].1;
            if spread <= 1e-14 * (1.0 + pts[0].1.abs()) {
                break;
            }
            let mut centroid = vec![0.0; dim];
            for (p, _) in &pts[..dim] {
                for (c, v) in centroid.iter_mut().zip(p) {
                    *c += v / dim as f64;
                }
            }
            let shifted = |coef: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&pts[dim].0)
                    .map(|(c, w)| c + coef * (c - w))
                    .collect()
            };
            let (rp, rv) = reach(&shifted(1.0));
            if rv < pts[0].1 {
                let (ep, ev) = reach(&shifted(2.0));
                pts[dim] = if ev < rv { (ep, ev) } else { (rp, rv) };
            } else if rv < pts[dim - 1].1 {
                pts[dim] = (rp, rv);
            } else {
                let (cp, cv) = if rv < pts[dim].1 {
                    reach(&shifted(0.5))
                } else {
                    reach(&shifted(-0.5))
                };
                if cv < pts[dim].1.min(rv) {
                    pts[dim] = (cp, cv);
                } else {
                    for i in 1..=dim {
                        let p: Vec<f64> = pts[0]
                            .0
                            .iter()
                            .zip(&pts[i].0)
                            .map(|(b, w)| b + 0.5 * (w - b))
                            .collect();
                        pts[i] = reach(&p);
                    }
                }
            }
        }
        pts.sort_by(|a, b| a.1.total_cmp(&b.1));
        if pts[0].1 < *best {
            *best = pts[0].1;
            *at = pts[0].0.clone();
        }
        scale /= 10.0;
    }
}

/// Minimum over one radius box: a coarse full sweep, then refinement passes
/// zooming tenfold onto the incumbent each time. The coarse incumbent can
/// sit several cells from the true minimizer when the valley floor is nearly
/// flat along some direction, so each pass re-centers and sweeps again while
/// its best point keeps landing on the zoom box edge, and only then shrinks.
/// A simplex polish finishes the local refinement. Returns the value, the
/// minimizer, and whether the incumbent sat on the outer box boundary.
fn refined_min<F: Fn(&[f64]) -> f64>(
    objective: &F,
    dim: usize,
    radius: f64,
    spec: &GridSpec,
) -> (f64, Vec<f64>, bool) {
    let origin = vec![0.0; dim];
    let (mut best, mut at) = grid_min(objective, &origin, radius, spec.coarse_points);
    if dim == 0 {
        return (best, at, false);
    }
    let refine = spec.refine_points_for(dim);
    let coarse_cell = 2.0 * radius / (spec.coarse_points - 1) as f64;
    let mut half = 2.0 * coarse_cell;
    for _ in 0..spec.refinement_passes {
        for _walk in 0..12 {
            let (v, p) = grid_min(objective, &at, half, refine);
            if v >= best {
                break;
            }
            best = v;
            let step = 2.0 * half / (refine - 1) as f64;
            let on_edge = p
                .iter()
                .zip(&at)
                .any(|(pi, ci)| (pi - ci).abs() >= half - 0.51 * step);
            at = p;
            if !on_edge {
                break;
            }
        }
        half /= 10.0;
    }
    simplex_polish(objective, &mut at, &mut best, radius, coarse_cell);
    let on_boundary = at.iter().any(|&y| y.abs() >= radius - 1.01 * coarse_cell);
    (best, at, on_boundary)
}

/// Grid evaluation of `inf_y S(x + y) - P(y)`, optionally with `y` confined
/// to a subspace. The level is always finite; a minimum still descending at
/// the largest radius, or sitting on its boundary, is reported as
/// limit-only.
pub fn brute_force_t(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    x: &Vector,
    restriction: Option<&Subspace>,
    spec: &GridSpec,
) -> Result<TValue, Error> {
    let dim = s.dim();
    if p.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    x.check_dim(dim)?;
    let search_dim = restriction.map_or(dim, Subspace::rank);
    if search_dim > 4 {
        return Err(Error::GridTooLarge {
            dim: search_dim,
            max: 4,
        });
    }
    spec.check_dim(search_dim)?;
    if spec.radii.is_empty() {
        return Err(Error::InvalidInput("the radius schedule is empty".into()));
    }

    let q: Vec<Vector> = restriction
        .map(|e| e.orthonormal_basis().to_vec())
        .unwrap_or_default();
    let xs = x.as_slice();
    let buffers = std::cell::RefCell::new((vec![0.0; dim], vec![0.0; dim]));
    let objective = |t: &[f64]| -> f64 {
        // With a restriction, t holds coordinates in the subspace frame.
        let (y, xy) = &mut *buffers.borrow_mut();
        match restriction {
            None => y.copy_from_slice(t),
            Some(_) => {
                y.fill(0.0);
                for (tk, qk) in t.iter().zip(&q) {
                    for (yd, qd) in y.iter_mut().zip(qk.iter()) {
                        *yd += tk * qd;
                    }
                }
            }
        }
        for ((d, a), b) in xy.iter_mut().zip(xs).zip(y.iter()) {
            *d = a + b;
        }
        s.eval_slice(xy) - p.eval_slice(y)
    };

    let mut per_radius = Vec::with_capacity(spec.radii.len());
    let mut best = f64::INFINITY;
    let mut best_at: Vec<f64> = Vec::new();
    let mut best_boundary = false;
    let mut best_radius_idx = 0;
    for (i, &radius) in spec.radii.iter().enumerate() {
        let (v, at, boundary) = refined_min(&objective, search_dim, radius, spec);
        if v < best - 1e-15 * (1.0 + v.abs()) {
            best = v;
            best_at = at;
            best_boundary = boundary;
            best_radius_idx = i;
        }
        per_radius.push(best.min(v));
    }

    let n = per_radius.len();
    let still_descending = n >= 2
        && per_radius[n - 1] < per_radius[n - 2] - 1e-6 * (1.0 + per_radius[n - 1].abs());
    let attainment = if still_descending || (best_radius_idx == n - 1 && best_boundary) {
        Attainment::LimitOnly
    } else {
        let witness = match restriction {
            None => Vector::new(best_at.clone()),
            Some(e) => e.point_from_ortho(&best_at),
        };
        Attainment::Attained(witness)
    };

    Ok(TValue {
        level: TLevel::Finite(best),
        method: TMethod::GridOracle,
        attainment,
        restriction_dim: restriction.map(Subspace::rank),
        evidence: per_radius,
        diagnostic: None,
    })
}

/// Grid evaluation of the four one-step window endpoints along `direction`.
/// Wholly independent of the linear programs and descents that
/// `interval_bounds` uses.
pub fn brute_force_bounds(
    s: &FunctionalSpec,
    p: &FunctionalSpec,
    f0: &PartialLinearFunctional,
    direction: &Vector,
    spec: &GridSpec,
) -> Result<ExtensionInterval, Error> {
    let dim = s.dim();
    if p.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    if f0.ambient_dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: f0.ambient_dim(),
        });
    }
    direction.check_dim(dim)?;
    let m = f0.subspace();
    let k = m.rank();
    if k > 3 {
        return Err(Error::GridTooLarge { dim: k, max: 3 });
    }
    spec.check_dim(k)?;

    if k == 0 {
        let neg = -direction;
        return Ok(ExtensionInterval {
            a: -s.eval(&neg),
            b: s.eval(direction),
            c: -p.eval(&neg),
            d: p.eval(direction),
            direction: direction.clone(),
        });
    }

    let q: Vec<Vector> = m.orthonormal_basis().to_vec();
    let w = f0.ortho_values();
    let sp = p.dual_negate();
    let buffer = std::cell::RefCell::new(vec![0.0; dim]);
    let bound = |shift_sign: f64, spec_fn: &FunctionalSpec| -> f64 {
        let objective = |t: &[f64]| -> f64 {
            let mut y = buffer.borrow_mut();
            for (yd, xd) in y.iter_mut().zip(direction.iter()) {
                *yd = shift_sign * xd;
            }
            for (tk, qk) in t.iter().zip(&q) {
                for (yd, qd) in y.iter_mut().zip(qk.iter()) {
                    *yd += tk * qd;
                }
            }
            let fy: f64 = t.iter().zip(&w).map(|(a, b)| a * b).sum();
            spec_fn.eval_slice(&y) - fy
        };
        let mut best = f64::INFINITY;
        for &radius in &spec.radii {
            let (v, _, _) = refined_min(&objective, k, radius, spec);
            best = best.min(v);
        }
        best
    };
    // Same reductions as the analytic path: b and a from S, c and d from
    // the reflection -P(-x).
    let b = bound(1.0, s);
    let a = -bound(-1.0, s);
    let c = bound(1.0, &sp);
    let d = -bound(-1.0, &sp);
    Ok(ExtensionInterval {
        a,
        b,
        c,
        d,
        direction: direction.clone(),
    })
}

/// A generated test problem with its construction recipe and the ground
/// truth of whether a sandwiched extension exists.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub s: FunctionalSpec,
    pub p: FunctionalSpec,
    pub f0: PartialLinearFunctional,
    /// Whether a sandwiched extension of `f0` exists by construction.
    pub feasible: bool,
    /// A unit direction outside the subspace of `f0`, handy as a probe.
    pub probe: Vector,
    /// For feasible instances, a functional sandwiched by construction.
    pub anchor: Option<LinearFunctional>,
    pub seed: u64,
    pub note: String,
}

/// Generate a polyhedral instance around a random anchor functional.
///
/// Feasible instances take `S` and `P` as axis-aligned perturbed cones
/// around the anchor `c`, so `P <= <c, .> <= S` holds everywhere and the
/// restriction of `c` to a random subspace is extendable. Infeasible
/// instances either separate the two hulls along a random direction (the
/// global order fails) or raise one prescribed value above the upper bound
/// (the trace order fails); one-dimensional problems only support the
/// first mode.
pub fn generate_instance(dim: usize, seed: u64, feasible: bool) -> Result<RandomInstance, Error> {
    if dim == 0 || dim > 6 {
        return Err(Error::InvalidInput(format!(
            "instances live in one through six dimensions, got {dim}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e11_0bad_5eed);

    let center = Vector::new((0..dim).map(|_| rng.gen::<f64>() * 4.0 - 2.0).collect());

    // Perturbed axis cones: generators come in pairs c +- (a e_i + eta), so
    // their hull contains c and the support gap S - <c, .> is a max of
    // absolute values.
    let make_cone = |rng: &mut ChaCha8Rng, around: &Vector| -> (Vec<Vector>, f64) {
        let mut gens = Vec::with_capacity(2 * dim);
        let mut spread = 0.0f64;
        for i in 0..dim {
            let scale = rng.gen::<f64>() * 1.2 + 0.6;
            let mut offset: Vec<f64> = (0..dim).map(|_| (rng.gen::<f64>() - 0.5) * 0.3).collect();
            offset[i] += scale;
            let offset = Vector::new(offset);
            spread = spread.max(offset.norm());
            gens.push(around + &offset);
            gens.push(around - &offset);
        }
        (gens, spread)
    };

    let (s_gens, s_spread) = make_cone(&mut rng, &center);

    // Random subspace of rank 1..=min(dim - 1, 3); one-dimensional
    // problems keep the trivial subspace.
    let rank_cap = dim.saturating_sub(1).min(3);
    let rank = if rank_cap == 0 {
        0
    } else {
        rng.gen_range(1..=rank_cap)
    };
    let m = loop {
        let basis: Vec<Vector> = (0..rank)
            .map(|_| Vector::new((0..dim).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect()))
            .collect();
        match Subspace::new(dim, basis) {
            Ok(sub) => break sub,
            Err(_) => continue,
        }
    };

    let probe = loop {
        let v = Vector::new((0..dim).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect());
        if let Some(unit) = v.normalized(1e-9) {
            if !m.contains(&unit) {
                break unit;
            }
        }
    };

    let anchored_values: Vec<f64> = m.basis().iter().map(|b| center.dot(b)).collect();

    if feasible {
        let (p_gens, _) = make_cone(&mut rng, &center);
        let s = FunctionalSpec::max_linear(s_gens)?;
        let p = FunctionalSpec::min_linear(p_gens)?;
        let f0 = PartialLinearFunctional::new(m, anchored_values)?;
        return Ok(RandomInstance {
            s,
            p,
            f0,
            feasible: true,
            probe,
            anchor: Some(LinearFunctional::new(center.clone())),
            seed,
            note: "feasible pair anchored at a common functional".into(),
        });
    }

    let mode_separate = rank == 0 || rng.gen_bool(0.5);
    if mode_separate {
        // Shift the lower hull past the upper one along a random unit
        // direction; the gap certifies that the global order fails.
        let u = loop {
            let v = Vector::new((0..dim).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect());
            if let Some(unit) = v.normalized(1e-9) {
                break unit;
            }
        };
        let shifted_center = &center + &(&u * (s_spread + 1.0 + rng.gen::<f64>()));
        let (mut p_gens, p_spread) = make_cone(&mut rng, &shifted_center);
        let extra = &u * p_spread;
        for g in &mut p_gens {
            *g = &*g + &extra;
        }
        let s = FunctionalSpec::max_linear(s_gens)?;
        let p = FunctionalSpec::min_linear(p_gens)?;
        let f0 = PartialLinearFunctional::new(m, anchored_values)?;
        return Ok(RandomInstance {
            s,
            p,
            f0,
            feasible: false,
            probe,
            anchor: None,
            seed,
            note: "infeasible: hulls separated with unit gap".into(),
        });
    }

    // Trace violation: raise the first prescribed value above the upper
    // bound at that basis vector.
    let s = FunctionalSpec::max_linear(s_gens)?;
    let (p_gens, _) = make_cone(&mut rng, &center);
    let p = FunctionalSpec::min_linear(p_gens)?;
    let mut values = anchored_values;
    values[0] = s.eval(&m.basis()[0]) + 1.0 + rng.gen::<f64>();
    let f0 = PartialLinearFunctional::new(m, values)?;
    Ok(RandomInstance {
        s,
        p,
        f0,
        feasible: false,
        probe,
        anchor: None,
        seed,
        note: "infeasible: prescribed value above the upper bound".into(),
    })
}
