//! Floating-point self-intersection count from a Schottky group.
//!
//! The intervals of the half-edges are laid out on the real line in ribbon
//! order and each generator maps the outside of one half-disk into the other.
//! The axes of the rotations of a cyclic word all pass through the
//! fundamental domain; a crossing there is a self-intersection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use sunada_core::intersections::RibbonStructure;
use sunada_core::words::{Letter, Word};

#[derive(Clone, Copy, Debug)]
struct M2([f64; 4]);

impl M2 {
    fn id() -> Self {
        M2([1.0, 0.0, 0.0, 1.0])
    }

    fn mul(self, o: M2) -> M2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        M2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    fn det(self) -> f64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    fn inv(self) -> M2 {
        let [a, b, c, d] = self.0;
        let k = self.det();
        M2([d / k, -b / k, -c / k, a / k])
    }

    fn scale(self, k: f64) -> M2 {
        M2(self.0.map(|x| x * k))
    }
}

/// Möbius map sending `p0 -> 0`, `p1 -> inf`, `p2 -> 1`; `None` is infinity.
fn to_standard(p: [Option<f64>; 3]) -> M2 {
    match p {
        [None, Some(b), Some(c)] => M2([0.0, c - b, 1.0, -b]),
        [Some(a), None, Some(c)] => M2([1.0, -a, 0.0, c - a]),
        [Some(a), Some(b), None] => M2([1.0, -a, 1.0, -b]),
        [Some(a), Some(b), Some(c)] => M2([c - b, -a * (c - b), c - a, -b * (c - a)]),
        _ => unreachable!("at most one point at infinity"),
    }
}

fn three_point(z: [Option<f64>; 3], w: [Option<f64>; 3]) -> M2 {
    to_standard(w).inv().mul(to_standard(z))
}

struct Ambiguous;

struct Group {
    gens: BTreeMap<Letter, M2>,
    intervals: Vec<(f64, f64)>,
}

fn build(ribbon: &RibbonStructure, rng: &mut ChaCha8Rng) -> Group {
    let mut x = 0.0;
    let mut iv = BTreeMap::new();
    for &h in ribbon.order() {
        x += rng.gen_range(0.5..2.0);
        let l = x;
        x += rng.gen_range(0.5..2.0);
        iv.insert(h, (l, x));
    }
    let mut gens = BTreeMap::new();
    for &g in ribbon.order() {
        if g.inverse {
            continue;
        }
        let (l1, r1) = iv[&g.inverse()];
        let (l2, r2) = iv[&g];
        let p = l2 + (r2 - l2) * rng.gen_range(0.2..0.8);
        let m = three_point([Some(l1), Some(r1), None], [Some(r2), Some(l2), Some(p)]);
        let det = m.det();
        assert!(det > 0.0, "orientation reversing generator");
        let m = m.scale(1.0 / det.sqrt());
        gens.insert(g, m);
        gens.insert(g.inverse(), m.inv());
    }
    Group { gens, intervals: iv.into_values().collect() }
}

fn fixed_points(m: M2) -> (f64, f64) {
    let [p, q, r, s] = m.0;
    let disc = ((s - p).powi(2) + 4.0 * r * q).sqrt();
    ((-(s - p) + disc) / (2.0 * r), (-(s - p) - disc) / (2.0 * r))
}

fn in_domain(x: f64, y: f64, g: &Group) -> Result<bool, Ambiguous> {
    for &(l, r) in &g.intervals {
        let c = (l + r) / 2.0;
        let rad = (r - l) / 2.0;
        let d = ((x - c).powi(2) + y * y).sqrt();
        if (d - rad).abs() < 1e-7 {
            return Err(Ambiguous);
        }
        if d < rad {
            return Ok(false);
        }
    }
    Ok(true)
}

fn crossing(e1: (f64, f64), e2: (f64, f64)) -> Option<(f64, f64)> {
    let (a1, b1) = (e1.0.min(e1.1), e1.0.max(e1.1));
    let (a2, b2) = (e2.0.min(e2.1), e2.0.max(e2.1));
    if !((a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)) {
        return None;
    }
    let (c1, r1) = ((a1 + b1) / 2.0, (b1 - a1) / 2.0);
    let (c2, r2) = ((a2 + b2) / 2.0, (b2 - a2) / 2.0);
    let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
    let y = (r1 * r1 - (x - c1).powi(2)).max(0.0).sqrt();
    Some((x, y))
}

fn attempt(w: &Word, ribbon: &RibbonStructure, rng: &mut ChaCha8Rng) -> Result<usize, Ambiguous> {
    let g = build(ribbon, rng);
    let n = w.len();
    let ends: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let m = w.rotate(i).letters().iter().fold(M2::id(), |m, l| m.mul(g.gens[l]));
            fixed_points(m)
        })
        .collect();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            if let Some((x, y)) = crossing(ends[i], ends[j]) {
                if in_domain(x, y, &g)? {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Self-intersection number of a cyclically reduced primitive word,
/// retrying with fresh random arcs when a crossing lies too close to a side.
pub fn self_intersection(w: &Word, ribbon: &RibbonStructure, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        if let Ok(n) = attempt(w, ribbon, &mut rng) {
            return n;
        }
    }
    panic!("no unambiguous Schottky configuration for {w}");
}
