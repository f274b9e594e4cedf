//! Sampled numeric checks for the two corner-path inequalities used by the
//! 4k+4 upper-bound argument. The inequalities are universally quantified;
//! seeded rejection sampling over their hypotheses is the desk-scale check.

use crate::geometry::{azimuth, unit, ConeSystem, Point};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

#[derive(Clone, Copy, Debug, Default)]
pub struct LemmaStats {
    pub samples: usize,
    pub violations: usize,
    /// Largest observed lhs - rhs over all samples (negative when clean).
    pub max_excess: f64,
}

struct Config {
    v: Point,
    w: Point,
    /// Corners of the canonical triangle of (v, w): upper has the larger y.
    upper: Point,
    lower: Point,
    /// Intersection of the side of T(u,w) opposite u with the left
    /// boundary ray of v's cone 0.
    a: Point,
    cone_of_w: u32,
}

/// Draw one configuration u=(0,0), w in cone 0 of u, v inside T(u,w) to the
/// left of w. Returns None when a degeneracy check fails.
fn draw(system: &ConeSystem, rng: &mut ChaCha8Rng) -> Option<Config> {
    let u = Point::new(0.0, 0.0);
    let half = system.theta() / 2.0;
    let w_az = rng.random_range(-half * 0.98..half * 0.98);
    let w = unit(w_az);

    let tri = system.canonical_triangle(u, w).ok()?;
    // Uniform in the triangle (u, corner_left, corner_right).
    let (mut s, mut t) = (rng.random::<f64>(), rng.random::<f64>());
    if s + t > 1.0 {
        s = 1.0 - s;
        t = 1.0 - t;
    }
    let v = u
        .add(tri.corner_left.sub(u).scale(s))
        .add(tri.corner_right.sub(u).scale(t));
    if v.x >= w.x - 1e-9 || v.distance(w) < 1e-6 || v.distance(u) < 1e-6 {
        return None;
    }

    let vt = system.canonical_triangle(v, w).ok()?;
    let (upper, lower) = if vt.corner_left.y >= vt.corner_right.y {
        (vt.corner_left, vt.corner_right)
    } else {
        (vt.corner_right, vt.corner_left)
    };
    // Left boundary of C0^v meets the horizontal through w above v.
    let ray = unit(-half);
    let climb = (w.y - v.y) / ray.y;
    if climb <= 0.0 {
        return None;
    }
    let a = v.add(ray.scale(climb));
    Some(Config {
        v,
        w,
        upper,
        lower,
        a,
        cone_of_w: vt.cone_index,
    })
}

/// Corner-path inequality with unit weights: for w in cone i of v with
/// 1 <= i <= k-1, or i = k and |cw| <= |dw|,
/// max(|vc|+|cw|, |vd|+|dw|) <= |va|+|aw| and max(|cw|, |dw|) <= |aw|.
pub fn lemma1_check(system: &ConeSystem, k: u32, samples: usize, seed: u64) -> LemmaStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = LemmaStats {
        max_excess: f64::NEG_INFINITY,
        ..Default::default()
    };
    while stats.samples < samples {
        let Some(c) = draw(system, &mut rng) else {
            continue;
        };
        let i = c.cone_of_w;
        let cw = c.upper.distance(c.w);
        let dw = c.lower.distance(c.w);
        let in_range = (k >= 2 && (1..=k - 1).contains(&i)) || (i == k && cw <= dw);
        if !in_range {
            continue;
        }
        stats.samples += 1;
        let rhs_paths = c.v.distance(c.a) + c.a.distance(c.w);
        let lhs_paths = (c.v.distance(c.upper) + cw).max(c.v.distance(c.lower) + dw);
        let rhs_tail = c.a.distance(c.w);
        let lhs_tail = cw.max(dw);
        let excess = (lhs_paths - rhs_paths).max(lhs_tail - rhs_tail);
        stats.max_excess = stats.max_excess.max(excess);
        if excess > 1e-9 {
            stats.violations += 1;
        }
    }
    stats
}

/// Weighted corner-path inequality: whenever
/// c >= (cos g - sin b) / (cos(theta/2 - b) - sin(theta/2 + g)),
/// max(|vc'| + c|c'w|, |vd'| + c|d'w|) <= |va| + c|aw|.
pub fn lemma2_check(system: &ConeSystem, samples: usize, seed: u64) -> LemmaStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = system.theta() / 2.0;
    let mut stats = LemmaStats {
        max_excess: f64::NEG_INFINITY,
        ..Default::default()
    };
    while stats.samples < samples {
        let Some(c) = draw(system, &mut rng) else {
            continue;
        };
        if c.cone_of_w == 0 {
            continue;
        }
        let beta = angle_at(c.w, c.a, c.v);
        let gamma = angle_between(
            c.w.sub(c.v),
            unit(system.bisector_azimuth(c.cone_of_w)),
        );
        let denom = (half - beta).cos() - (half + gamma).sin();
        if denom <= 1e-9 {
            continue;
        }
        let threshold = (gamma.cos() - beta.sin()) / denom;
        stats.samples += 1;
        for weight in [threshold.max(1e-9), threshold.max(0.0) + 1.0, threshold.max(0.0) * 2.0 + 5.0] {
            let rhs = c.v.distance(c.a) + weight * c.a.distance(c.w);
            let lhs = (c.v.distance(c.upper) + weight * c.upper.distance(c.w))
                .max(c.v.distance(c.lower) + weight * c.lower.distance(c.w));
            let excess = lhs - rhs;
            stats.max_excess = stats.max_excess.max(excess);
            if excess > 1e-9 {
                stats.violations += 1;
            }
        }
    }
    stats
}

fn angle_at(corner: Point, p: Point, q: Point) -> f64 {
    angle_between(p.sub(corner), q.sub(corner))
}

fn angle_between(a: Point, b: Point) -> f64 {
    let raw = (azimuth(a) - azimuth(b)).rem_euclid(std::f64::consts::TAU);
    raw.min(std::f64::consts::TAU - raw)
}
