//! Closed-form spanning-ratio bounds per cone-count family and the
//! staircase limit formulas behind the lower bounds.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyKind {
    F4k2,
    F4k3,
    F4k4,
    F4k5,
    NonSpanner,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::F4k2 => "4k+2",
            FamilyKind::F4k3 => "4k+3",
            FamilyKind::F4k4 => "4k+4",
            FamilyKind::F4k5 => "4k+5",
            FamilyKind::NonSpanner => "non-spanner",
        }
    }
}

/// Family classification of a cone count: m = 4k+2 / 4k+3 / 4k+4 / 4k+5,
/// with m in 3..=6 set aside as the non-spanner range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundFamily {
    pub kind: FamilyKind,
    pub k: u32,
    pub m: u32,
}

pub fn classify(m: u32) -> Result<BoundFamily> {
    if m < 3 {
        return Err(Error::InvalidConeCount(m));
    }
    if m <= 6 {
        return Ok(BoundFamily {
            kind: FamilyKind::NonSpanner,
            k: 0,
            m,
        });
    }
    let (kind, k) = match m % 4 {
        2 => (FamilyKind::F4k2, (m - 2) / 4),
        3 => (FamilyKind::F4k3, (m - 3) / 4),
        0 => (FamilyKind::F4k4, (m - 4) / 4),
        _ => (FamilyKind::F4k5, (m - 5) / 4),
    };
    Ok(BoundFamily { kind, k, m })
}

fn theta(m: u32) -> f64 {
    std::f64::consts::TAU / m as f64
}

/// The 4k+4 tight ratio: 1 + 2 sin(theta/2) / (cos(theta/2) - sin(theta/2)).
fn ratio_4k4(theta: f64) -> f64 {
    let h = theta / 2.0;
    1.0 + 2.0 * h.sin() / (h.cos() - h.sin())
}

/// The classical upper bound 1 / (1 - 2 sin(theta/2)).
fn ratio_classic(theta: f64) -> f64 {
    1.0 / (1.0 - 2.0 * (theta / 2.0).sin())
}

/// Best known upper bound on the spanning ratio, `None` for the
/// non-spanner range.
pub fn upper_bound(m: u32) -> Result<Option<f64>> {
    let family = classify(m)?;
    let t = theta(m);
    Ok(match family.kind {
        FamilyKind::NonSpanner => None,
        FamilyKind::F4k4 => Some(ratio_4k4(t)),
        FamilyKind::F4k2 | FamilyKind::F4k3 | FamilyKind::F4k5 => Some(ratio_classic(t)),
    })
}

/// Best known lower bound on the worst-case spanning ratio, `None` for the
/// non-spanner range (where no constant exists).
pub fn lower_bound(m: u32) -> Result<Option<f64>> {
    let family = classify(m)?;
    let t = theta(m);
    Ok(match family.kind {
        FamilyKind::NonSpanner => None,
        FamilyKind::F4k2 => Some(ratio_classic(t)),
        FamilyKind::F4k3 => Some(((t / 4.0).cos() + t.sin()) / (3.0 * t / 4.0).cos()),
        FamilyKind::F4k4 => Some(ratio_4k4(t)),
        FamilyKind::F4k5 => {
            Some(1.0 + 2.0 * (t / 2.0).sin() * (t / 4.0).cos() / ((t / 2.0).cos() - (3.0 * t / 4.0).sin()))
        }
    })
}

/// Limiting stretch of the two-line staircase:
/// [sin((pi-theta)/2 + beta) + sin(theta)] / sin((pi-theta)/2 - beta).
pub fn staircase_limit(theta: f64, beta: f64) -> Result<f64> {
    let base = (PI - theta) / 2.0;
    if !(0.0..base).contains(&beta) {
        return Err(Error::DegenerateAngle(base - beta));
    }
    let denom = (base - beta).sin();
    if denom <= 1e-12 {
        return Err(Error::DegenerateAngle(denom));
    }
    Ok(((base + beta).sin() + theta.sin()) / denom)
}

/// Limiting stretch of the six-point-configuration staircase:
/// [sin((pi+theta)/2) + sin(theta)] / sin((pi-3 theta)/2).
pub fn staircase_limit_4k2(theta: f64) -> Result<f64> {
    let denom = ((PI - 3.0 * theta) / 2.0).sin();
    if theta >= PI / 3.0 || denom <= 1e-12 {
        return Err(Error::DegenerateAngle(denom));
    }
    Ok((((PI + theta) / 2.0).sin() + theta.sin()) / denom)
}

/// Per-step path increment of the non-spanner towers, per unit |uw|.
pub fn tower_growth(m: u32) -> Result<f64> {
    match m {
        0..=2 => Err(Error::InvalidConeCount(m)),
        3 => Ok(3f64.sqrt() / 2.0),
        4 => Ok(2f64.sqrt()),
        5 => Ok((PI / 10.0).cos() / (PI / 5.0).cos()),
        6 => Ok(2.0),
        _ => Err(Error::NotATower(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let f = classify(8).unwrap();
        assert_eq!((f.kind, f.k), (FamilyKind::F4k4, 1));
        assert_eq!(classify(6).unwrap().kind, FamilyKind::NonSpanner);
        let f = classify(10).unwrap();
        assert_eq!((f.kind, f.k), (FamilyKind::F4k2, 2));
        let f = classify(7).unwrap();
        assert_eq!((f.kind, f.k), (FamilyKind::F4k3, 1));
        let f = classify(9).unwrap();
        assert_eq!((f.kind, f.k), (FamilyKind::F4k5, 1));
        assert!(classify(2).is_err());
    }

    #[test]
    fn classification_total_and_unique() {
        for m in 3..200 {
            let f = classify(m).unwrap();
            if m <= 6 {
                assert_eq!(f.kind, FamilyKind::NonSpanner);
            } else {
                let expected = match f.kind {
                    FamilyKind::F4k2 => 4 * f.k + 2,
                    FamilyKind::F4k3 => 4 * f.k + 3,
                    FamilyKind::F4k4 => 4 * f.k + 4,
                    FamilyKind::F4k5 => 4 * f.k + 5,
                    FamilyKind::NonSpanner => unreachable!(),
                };
                assert_eq!(expected, m);
                assert!(f.k >= 1 || (f.kind == FamilyKind::F4k3 && m == 7));
            }
        }
    }

    #[test]
    fn bound_values() {
        // Independent evaluations of the closed forms.
        let cases = [
            (7, Some(7.562_372_420_6), Some(2.246_979_603_7)),
            (8, Some(2.414_213_562_4), Some(2.414_213_562_4)),
            (9, Some(3.164_956_717_3), Some(2.532_088_886_2)),
            (10, Some(2.618_033_988_7), Some(2.618_033_988_7)),
            (14, Some(1.801_937_735_8), Some(1.801_937_735_8)),
            (4, None, None),
            (5, None, None),
        ];
        for (m, up, low) in cases {
            let u = upper_bound(m).unwrap();
            let l = lower_bound(m).unwrap();
            match (u, up) {
                (Some(a), Some(b)) => assert!((a - b).abs() < 1e-9, "upper m={m}: {a}"),
                (None, None) => {}
                other => panic!("upper m={m}: {other:?}"),
            }
            match (l, low) {
                (Some(a), Some(b)) => assert!((a - b).abs() < 1e-9, "lower m={m}: {a}"),
                (None, None) => {}
                other => panic!("lower m={m}: {other:?}"),
            }
        }
    }

    #[test]
    fn tightness_and_dominance() {
        for m in 7..=101 {
            let f = classify(m).unwrap();
            let u = upper_bound(m).unwrap().unwrap();
            let l = lower_bound(m).unwrap().unwrap();
            assert!(l <= u + 1e-12, "m={m}: lower {l} > upper {u}");
            let tight = matches!(f.kind, FamilyKind::F4k4)
                || (f.kind == FamilyKind::F4k2 && f.k >= 2);
            if tight {
                assert!((l - u).abs() < 1e-12, "m={m} should be tight");
            }
        }
    }

    #[test]
    fn ordered_4k2_strictly_worse_than_unordered() {
        for k in 2..=20 {
            let m = 4 * k + 2;
            let t = theta(m);
            let unordered = 1.0 + 2.0 * (t / 2.0).sin();
            let l = lower_bound(m).unwrap().unwrap();
            assert!(l > unordered + 1e-9, "m={m}");
        }
    }

    #[test]
    fn staircase_limits_match_family_bounds() {
        for m in 7..=41u32 {
            let f = classify(m).unwrap();
            let t = theta(m);
            let beta = match f.kind {
                FamilyKind::F4k4 => t / 2.0,
                FamilyKind::F4k3 => t / 4.0,
                FamilyKind::F4k5 => 3.0 * t / 4.0,
                _ => continue,
            };
            let limit = staircase_limit(t, beta).unwrap();
            let bound = lower_bound(m).unwrap().unwrap();
            assert!((limit - bound).abs() < 1e-9, "m={m}: {limit} vs {bound}");
        }
        // 4k+2 family has its own closed form.
        for k in 2..=10u32 {
            let m = 4 * k + 2;
            let limit = staircase_limit_4k2(theta(m)).unwrap();
            let bound = lower_bound(m).unwrap().unwrap();
            assert!((limit - bound).abs() < 1e-9, "m={m}");
        }
    }

    #[test]
    fn staircase_limit_degenerates_to_one() {
        // Flat staircase: theta -> 0 gives ratio -> 1.
        assert!((staircase_limit_4k2(1e-9).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn tower_growth_values() {
        assert!((tower_growth(4).unwrap() - 1.414_213_562_4).abs() < 1e-9);
        assert!((tower_growth(3).unwrap() - 0.866_025_403_8).abs() < 1e-9);
        assert!((tower_growth(5).unwrap() - 1.175_570_504_6).abs() < 1e-9);
        assert!((tower_growth(6).unwrap() - 2.0).abs() < 1e-12);
        assert!(matches!(tower_growth(7), Err(Error::NotATower(7))));
        assert!(matches!(tower_growth(2), Err(Error::InvalidConeCount(2))));
    }
}
