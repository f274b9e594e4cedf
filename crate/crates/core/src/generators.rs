//! Adversarial point sets with insertion orders, plus seeded random
//! instances.
//!
//! The staircases realize "arbitrarily close" as an inward offset of
//! eps times the local triangle scale plus a seeded jitter of eps/100,
//! so every instance is a concrete general-position point set whose
//! measured stretch converges to the family's limit as eps -> 0 and the
//! step count grows.

use crate::bounds::{classify, BoundFamily, FamilyKind};
use crate::construction::InsertionOrder;
use crate::error::{Error, Result};
use crate::geometry::{azimuth, unit, ConeSystem, Point};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_size: Option<f64>,
}

/// A generated point set with its insertion order and labels. Labels follow
/// the construction roles (u, w, v1.., l1.., r1..).
#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub system: ConeSystem,
    pub points: Vec<Point>,
    pub order: InsertionOrder,
    pub family: BoundFamily,
    pub labels: Vec<String>,
    pub params: GenParams,
}

impl GeneratedInstance {
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1e-3 {
        Ok(())
    } else {
        Err(Error::BadEps(eps))
    }
}

fn normalize(p: Point) -> Point {
    p.scale(1.0 / p.norm())
}

/// Wrap an angle to (-pi, pi].
fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Corner {
    Left,
    Right,
}

/// Corner of the canonical triangle of (apex, target), offset inward along
/// the corner's angle bisector by `eps * |apex corner|`, with a jitter of
/// eps/100 to defeat exact degeneracies.
fn pulled_corner(
    system: &ConeSystem,
    apex: Point,
    target: Point,
    which: Corner,
    eps: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Point> {
    let tri = system.canonical_triangle(apex, target)?;
    let (corner, other) = match which {
        Corner::Left => (tri.corner_left, tri.corner_right),
        Corner::Right => (tri.corner_right, tri.corner_left),
    };
    let scale = apex.distance(corner);
    let inward = normalize(normalize(apex.sub(corner)).add(normalize(other.sub(corner))));
    let jitter = Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        .scale(eps / 100.0 * scale);
    Ok(corner.add(inward.scale(eps * scale)).add(jitter))
}

struct Assembly {
    labels: Vec<String>,
    points: Vec<Point>,
    /// Insertion order as label indices.
    order: Vec<usize>,
}

impl Assembly {
    fn new() -> Self {
        Self {
            labels: Vec::new(),
            points: Vec::new(),
            order: Vec::new(),
        }
    }

    fn place(&mut self, label: String, p: Point) -> usize {
        self.labels.push(label);
        self.points.push(p);
        self.points.len() - 1
    }

    fn finish(
        self,
        system: ConeSystem,
        family: BoundFamily,
        params: GenParams,
    ) -> Result<GeneratedInstance> {
        let report = system.check_general_position(&self.points);
        if !report.is_clean() {
            return Err(Error::GeneralPositionViolation(report));
        }
        let order = InsertionOrder::new(self.order, self.points.len())?;
        Ok(GeneratedInstance {
            system,
            points: self.points,
            order,
            family,
            labels: self.labels,
            params,
        })
    }
}

/// Structural beta of the first staircase step: the angle between the
/// horizontal through w and the upper corner ray of the canonical triangle
/// of (w, v1). This is fixed by which cone of w catches the horizontal
/// direction, so a wrong corner choice shows up as a jump of ~theta/4.
fn realized_beta(system: &ConeSystem, w: Point, v1: Point) -> Result<f64> {
    let tri = system.canonical_triangle(w, v1)?;
    Ok(wrap(azimuth(tri.corner_right.sub(w)) + FRAC_PI_2))
}

fn beta_target(m: u32, theta: f64) -> f64 {
    match m % 4 {
        0 => theta / 2.0,
        3 => theta / 4.0,
        1 => 3.0 * theta / 4.0,
        _ => f64::NAN, // 4k+2 uses the six-point construction instead
    }
}

/// Shared two-corner staircase: u at the origin, w at unit distance at
/// azimuth `phi_w`, then v_i alternating between the left corner of
/// T(v_{i-2}, v_{i-1}) (odd i) and the upper corner of T(v_{i-1}, v_i)'s
/// frame (even i), inserted in reverse placement order followed by w and u.
fn corner_staircase(
    system: &ConeSystem,
    phi_w: f64,
    count: u32,
    eps: f64,
    check_beta: bool,
    seed: u64,
) -> Result<Assembly> {
    let m = system.m();
    let theta = system.theta();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut asm = Assembly::new();

    let u = Point::new(0.0, 0.0);
    let w = unit(phi_w);
    let ui = asm.place("u".into(), u);
    let wi = asm.place("w".into(), w);

    let mut frame = (u, w); // (v_{i-2}, v_{i-1}) with v_{-1} = u, v_0 = w
    let mut vs = Vec::with_capacity(count as usize);
    for i in 1..=count {
        let which = if i % 2 == 1 {
            Corner::Left
        } else {
            Corner::Right
        };
        let v = pulled_corner(system, frame.0, frame.1, which, eps, &mut rng)?;
        let idx = asm.place(format!("v{i}"), v);
        vs.push(idx);
        frame = (frame.1, v);
    }

    if check_beta && count >= 1 {
        let target = beta_target(m, theta);
        let realized = realized_beta(system, w, asm.points[vs[0]])?;
        if (realized - target).abs() > 1e-6 {
            return Err(Error::BetaRealizationFailure {
                realized,
                target,
                tolerance: 1e-6,
            });
        }
    }

    asm.order.extend(vs.iter().rev());
    asm.order.push(wi);
    asm.order.push(ui);
    Ok(asm)
}

/// Staircase for 4k+4 cone counts: w hugs the right boundary of cone 0 of
/// u and the build is a single path whose stretch approaches the tight
/// lower bound. `steps` counts (left corner, upper corner) vertex pairs.
pub fn gen_staircase_4k4(m: u32, steps: u32, eps: f64) -> Result<GeneratedInstance> {
    let system = ConeSystem::new(m)?;
    let family = classify(m)?;
    if family.kind != FamilyKind::F4k4 {
        return Err(Error::InvalidFamily {
            m,
            reason: "staircase requires m = 4k+4 with k >= 1",
        });
    }
    if steps < 1 {
        return Err(Error::InvalidFamily {
            m,
            reason: "steps must be >= 1",
        });
    }
    check_eps(eps)?;
    let phi_w = system.theta() / 2.0 - eps;
    let asm = corner_staircase(&system, phi_w, 2 * steps, eps, true, 0x4b4 + m as u64)?;
    asm.finish(
        system,
        family,
        GenParams {
            kind: "staircase".into(),
            steps: Some(steps),
            eps: Some(eps),
            seed: None,
            box_size: None,
        },
    )
}

/// Staircase for 4k+3 and 4k+5 cone counts. Same two-corner scheme; the
/// cone parity realizes beta = theta/4 (4k+3) or 3*theta/4 (4k+5), and the
/// generator verifies the realized beta instead of trusting the corner
/// choice.
pub fn gen_staircase_odd(m: u32, steps: u32, eps: f64) -> Result<GeneratedInstance> {
    let system = ConeSystem::new(m)?;
    let family = classify(m)?;
    if !matches!(family.kind, FamilyKind::F4k3 | FamilyKind::F4k5) {
        return Err(Error::InvalidFamily {
            m,
            reason: "odd staircase requires m = 4k+3 or 4k+5 with m >= 7",
        });
    }
    if steps < 1 {
        return Err(Error::InvalidFamily {
            m,
            reason: "steps must be >= 1",
        });
    }
    check_eps(eps)?;
    let phi_w = system.theta() / 2.0 - eps;
    let asm = corner_staircase(&system, phi_w, 2 * steps, eps, true, 0x0dd + m as u64)?;
    asm.finish(
        system,
        family,
        GenParams {
            kind: "staircase".into(),
            steps: Some(steps),
            eps: Some(eps),
            seed: None,
            box_size: None,
        },
    )
}

/// Non-spanner towers for m in 3..=6.
///
/// For m in {3, 4, 5} this is the two-corner staircase with w placed so the
/// construction is self-similar: on the bisector side for m = 4, at
/// theta/4 right of the bisector for m = 5, at theta/4 left for m = 3.
/// For m = 3 each placed vertex advances the path by sqrt(3) = 2 * sqrt(3)/2,
/// so one placed vertex counts as two steps and `n` steps map to
/// ceil(n/2) vertices. For m = 6 the tower repeats a four-vertex
/// configuration.
pub fn gen_tower(m: u32, n: u32, eps: f64) -> Result<GeneratedInstance> {
    if n < 1 {
        return Err(Error::InvalidFamily {
            m,
            reason: "n must be >= 1",
        });
    }
    check_eps(eps)?;
    let system = ConeSystem::new(m)?;
    let family = classify(m)?;
    let theta = system.theta();
    let params = GenParams {
        kind: "tower".into(),
        steps: Some(n),
        eps: Some(eps),
        seed: None,
        box_size: None,
    };
    match m {
        4 => {
            let asm = corner_staircase(&system, eps, n, eps, true, 0x704 + n as u64)?;
            asm.finish(system, family, params)
        }
        5 => {
            let asm =
                corner_staircase(&system, theta / 4.0 - eps, n, eps, true, 0x705 + n as u64)?;
            asm.finish(system, family, params)
        }
        3 => {
            let vertices = n.div_ceil(2);
            let asm = corner_staircase(
                &system,
                -theta / 4.0 + eps,
                vertices,
                eps,
                true,
                0x703 + n as u64,
            )?;
            asm.finish(system, family, params)
        }
        6 => gen_tower_theta6(&system, n, eps, params),
        _ => Err(Error::NotATower(m)),
    }
}

/// Four-vertex configurations for the theta_6 tower: l_i near the previous
/// left anchor, v_{2i} in the right corner of the frame triangle, r_i near
/// v_{2i}, v_{2i+1} in the left corner of T(l_i, r_i).
fn gen_tower_theta6(
    system: &ConeSystem,
    n: u32,
    eps: f64,
    params: GenParams,
) -> Result<GeneratedInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x706 + n as u64);
    let mut asm = Assembly::new();
    let theta = system.theta();

    let u = Point::new(0.0, 0.0);
    let w = unit(theta / 2.0 - eps);
    let ui = asm.place("u".into(), u);
    let wi = asm.place("w".into(), w);
    let v1 = pulled_corner(system, u, w, Corner::Left, 0.2 * eps, &mut rng)?;
    let v1i = asm.place("v1".into(), v1);

    // Insertion order is assembled per configuration, back to front.
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut anchor = v1; // role of v1 for the current configuration
    let mut frame_w = w; // role of w
    for i in 1..=n {
        let scale = anchor.distance(frame_w);
        // l_i sits just above the frame triangle, inside the cone of the
        // anchor that contains the frame's w-role vertex.
        let cone = system.cone_index(anchor, frame_w)?;
        let l = anchor.add(unit(system.bisector_azimuth(cone)).scale(eps * scale));
        let li = asm.place(format!("l{i}"), l);

        let v_even = pulled_corner(system, frame_w, l, Corner::Right, 0.2 * eps, &mut rng)?;
        let v_even_i = asm.place(format!("v{}", 2 * i), v_even);

        let cone_l = system.cone_index(v_even, l)?;
        let r = v_even.add(unit(system.bisector_azimuth(cone_l)).scale(0.5 * eps * scale));
        let ri = asm.place(format!("r{i}"), r);

        let v_odd = pulled_corner(system, l, r, Corner::Left, 0.4 * eps, &mut rng)?;
        let v_odd_i = asm.place(format!("v{}", 2 * i + 1), v_odd);

        blocks.push(vec![ri, v_odd_i, li, v_even_i]);
        anchor = v_odd;
        frame_w = r;
    }

    for block in blocks.iter().rev() {
        asm.order.extend(block.iter());
    }
    asm.order.push(wi);
    asm.order.push(v1i);
    asm.order.push(ui);
    let family = classify(system.m())?;
    asm.finish(*system, family, params)
}

/// Six-point configurations for 4k+2 cone counts (m >= 10). Each
/// configuration places l_{2i-1}, v_{2i}, l_{2i}, r_{2i-1}, v_{2i+1},
/// r_{2i}; v_{2i+1} keeps v_{2i+1} r_{2i} parallel to v_1 w so the
/// configurations tile, shrinking by 4 sin^2(theta/2) per repetition.
pub fn gen_staircase_4k2(m: u32, reps: u32, eps: f64) -> Result<GeneratedInstance> {
    let system = ConeSystem::new(m)?;
    let family = classify(m)?;
    if family.kind != FamilyKind::F4k2 || m < 10 {
        return Err(Error::InvalidFamily {
            m,
            reason: "six-point staircase requires m = 4k+2 with k >= 2",
        });
    }
    if reps < 1 {
        return Err(Error::InvalidFamily {
            m,
            reason: "reps must be >= 1",
        });
    }
    check_eps(eps)?;
    let theta = system.theta();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4b2 + m as u64);
    let mut asm = Assembly::new();

    let u = Point::new(0.0, 0.0);
    let w = unit(theta / 2.0 - eps);
    let ui = asm.place("u".into(), u);
    let wi = asm.place("w".into(), w);
    // v1 barely below the corner so its satellites can sit above the
    // horizontal through w.
    let v1 = pulled_corner(&system, u, w, Corner::Left, 0.05 * eps, &mut rng)?;
    let v1i = asm.place("v1".into(), v1);

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut a = v1; // v_{2i-1} role
    let mut b = w; // v_{2i-2} role (w for the first configuration)
    for i in 1..=reps {
        let scale = a.distance(b);
        let cone_ab = system.cone_index(a, b)?;
        // l_{2i-1} on the bisector of a's cone toward b: lifted above the
        // frame horizontal because a sits barely below it.
        let l1 = a.add(unit(system.bisector_azimuth(cone_ab)).scale(eps * scale));
        let l1i = asm.place(format!("l{}", 2 * i - 1), l1);

        let v_even = pulled_corner(&system, b, l1, Corner::Right, 0.3 * eps, &mut rng)?;
        let v_even_i = asm.place(format!("v{}", 2 * i), v_even);

        // l_{2i} near a, close to the right boundary of a's cone toward the
        // new even vertex.
        let cone_av = system.cone_index(a, v_even)?;
        let right_az = system.bisector_azimuth(cone_av) + theta / 2.0 - 0.05 * theta;
        let l2 = a.add(unit(right_az).scale(0.8 * eps * scale));
        let l2i = asm.place(format!("l{}", 2 * i), l2);

        // r_{2i-1} just below-left of the even vertex, inside cone 0 of l2.
        let toward = azimuth(l2.sub(v_even));
        let r1 = v_even.add(unit(toward + 0.02 * theta).scale(0.4 * eps * scale));
        if system.cone_index(l2, r1)? != 0 {
            return Err(Error::InvalidFamily {
                m,
                reason: "r vertex escaped cone 0 of its l anchor",
            });
        }
        let r1i = asm.place(format!("r{}", 2 * i - 1), r1);

        let v_odd = pulled_corner(&system, l1, r1, Corner::Left, 0.3 * eps, &mut rng)?;
        let v_odd_i = asm.place(format!("v{}", 2 * i + 1), v_odd);

        // r_{2i} keeps v_{2i+1} -> r_{2i} parallel to v1 -> w.
        let along = normalize(w.sub(v1));
        let r2 = v_odd.add(along.scale(0.3 * v_odd.distance(v_even)));
        let r2i = asm.place(format!("r{}", 2 * i), r2);

        blocks.push(vec![r2i, r1i, v_odd_i, l2i, l1i, v_even_i]);
        a = v_odd;
        b = v_even;
    }

    for block in blocks.iter().rev() {
        asm.order.extend(block.iter());
    }
    asm.order.push(wi);
    asm.order.push(v1i);
    asm.order.push(ui);
    asm.finish(
        system,
        family,
        GenParams {
            kind: "staircase".into(),
            steps: Some(reps),
            eps: Some(eps),
            seed: None,
            box_size: None,
        },
    )
}

/// Seeded uniform points in [0, box]^2, resampled until the set passes the
/// general-position check, with a random insertion order.
pub fn gen_random(m: u32, n: u32, seed: u64, box_size: f64) -> Result<GeneratedInstance> {
    let system = ConeSystem::new(m)?;
    if n < 2 {
        return Err(Error::TooSmall(2, n as usize));
    }
    if !(box_size > 0.0) {
        return Err(Error::BadInstance("box size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 1_000_000u64;
    let mut attempts = 0;
    let points = loop {
        attempts += 1;
        if attempts > budget {
            return Err(Error::ResampleBudgetExceeded(budget));
        }
        let cand: Vec<Point> = (0..n)
            .map(|_| {
                Point::new(
                    rng.random_range(0.0..box_size),
                    rng.random_range(0.0..box_size),
                )
            })
            .collect();
        if system.check_general_position(&cand).is_clean() {
            break cand;
        }
    };
    // Fisher-Yates from the same stream keeps the instance a pure function
    // of (m, n, seed, box).
    let mut order: Vec<usize> = (0..n as usize).collect();
    for i in (1..order.len()).rev() {
        let j = rng.random_range(0..=i);
        order.swap(i, j);
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    Ok(GeneratedInstance {
        system,
        points,
        order: InsertionOrder::new(order, n as usize)?,
        family: classify(m)?,
        labels,
        params: GenParams {
            kind: "random".into(),
            steps: Some(n),
            eps: None,
            seed: Some(seed),
            box_size: Some(box_size),
        },
    })
}

/// Route to the family's generator from the cone count alone.
pub fn gen_for_family(m: u32, steps: u32, eps: f64) -> Result<GeneratedInstance> {
    match classify(m)?.kind {
        FamilyKind::F4k4 => gen_staircase_4k4(m, steps, eps),
        FamilyKind::F4k3 | FamilyKind::F4k5 => gen_staircase_odd(m, steps, eps),
        FamilyKind::F4k2 => gen_staircase_4k2(m, steps, eps),
        FamilyKind::NonSpanner => gen_tower(m, steps, eps),
    }
}

#[allow(dead_code)]
fn label_map(instance: &GeneratedInstance) -> HashMap<&str, usize> {
    instance
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_ordered;
    use crate::metrics::all_pairs_stretch;

    #[test]
    fn staircase_4k4_one_step_is_a_path() {
        let inst = gen_staircase_4k4(8, 1, 1e-6).unwrap();
        assert_eq!(inst.points.len(), 4);
        let g = build_ordered(&inst.system, &inst.points, &inst.order).unwrap();
        assert_eq!(g.edges.len(), 3);
        let (u, w) = (inst.index_of("u").unwrap(), inst.index_of("w").unwrap());
        let (v1, v2) = (inst.index_of("v1").unwrap(), inst.index_of("v2").unwrap());
        assert!(g.has_edge(u, v1));
        assert!(g.has_edge(v1, v2));
        assert!(g.has_edge(v2, w));
    }

    #[test]
    fn staircase_odd_one_step_is_a_path() {
        for m in [7u32, 9] {
            let inst = gen_staircase_odd(m, 1, 1e-6).unwrap();
            let g = build_ordered(&inst.system, &inst.points, &inst.order).unwrap();
            assert_eq!(g.edges.len(), 3, "m={m}");
        }
    }

    #[test]
    fn staircase_rejects_bad_inputs() {
        assert!(matches!(
            gen_staircase_4k4(7, 5, 1e-6),
            Err(Error::InvalidFamily { .. })
        ));
        assert!(matches!(
            gen_staircase_4k4(8, 5, 0.0),
            Err(Error::BadEps(_))
        ));
        assert!(matches!(
            gen_staircase_odd(8, 5, 1e-6),
            Err(Error::InvalidFamily { .. })
        ));
        assert!(matches!(gen_tower(7, 5, 1e-6), Err(Error::NotATower(7))));
    }

    #[test]
    fn staircases_pass_general_position_and_are_deterministic() {
        let a = gen_staircase_4k4(12, 10, 1e-6).unwrap();
        let b = gen_staircase_4k4(12, 10, 1e-6).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.order, b.order);
        assert!(a.system.check_general_position(&a.points).is_clean());
    }

    #[test]
    fn tower_paths_have_expected_length() {
        // m=4: single path of length 1 + n sqrt(2).
        let inst = gen_tower(4, 12, 1e-6).unwrap();
        let g = build_ordered(&inst.system, &inst.points, &inst.order).unwrap();
        assert_eq!(g.edges.len(), inst.points.len() - 1);
        let r = all_pairs_stretch(&g, false).unwrap();
        let expect = 1.0 + 12.0 * 2f64.sqrt();
        assert!(
            (r.max_stretch - expect).abs() / expect < 1e-3,
            "got {} want {}",
            r.max_stretch,
            expect
        );
    }

    #[test]
    fn random_instances_are_deterministic_and_clean() {
        let a = gen_random(8, 30, 7, 1.0).unwrap();
        let b = gen_random(8, 30, 7, 1.0).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.order, b.order);
        assert!(a.system.check_general_position(&a.points).is_clean());
        let c = gen_random(8, 30, 8, 1.0).unwrap();
        assert_ne!(a.points, c.points);
    }

    #[test]
    fn random_two_points_build_one_edge() {
        let inst = gen_random(8, 2, 1, 1.0).unwrap();
        let g = build_ordered(&inst.system, &inst.points, &inst.order).unwrap();
        assert_eq!(g.edges.len(), 1);
    }
}
