//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::f64::consts::PI;

use cusptri_core::moves::apply;
use cusptri_core::{census, Move, Perm4, Triangulation};

/// Every bijection of `0..n`, in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// Whether the labelling `(tet_map, vertex_maps)` carries `a` exactly onto `b`.
fn carries(a: &Triangulation, b: &Triangulation, tet_map: &[usize], vertex_maps: &[Perm4]) -> bool {
    for tet in 0..a.tet_count() {
        let phi = vertex_maps[tet];
        for face in 0..4 {
            let image = b.gluing(tet_map[tet], phi.apply(face));
            let expected = a.gluing(tet, face).map(|g| {
                (tet_map[g.tet], vertex_maps[g.tet].compose(g.perm).compose(phi.inverse()))
            });
            if image.map(|g| (g.tet, g.perm)) != expected {
                return false;
            }
        }
    }
    true
}

/// Tries all `n! * 24^n` relabellings.
pub fn brute_force_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    let n = a.tet_count();
    if n != b.tet_count() {
        return false;
    }
    let perms: Vec<Perm4> = Perm4::all().collect();
    for tet_map in permutations(n) {
        let mut choice = vec![0usize; n];
        loop {
            let maps: Vec<Perm4> = choice.iter().map(|&c| perms[c]).collect();
            if carries(a, b, &tet_map, &maps) {
                return true;
            }
            let mut k = 0;
            while k < n && choice[k] == 23 {
                choice[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            choice[k] += 1;
        }
    }
    false
}

/// Orientability by trying every assignment of signs to tetrahedra.
pub fn brute_force_orientable(tri: &Triangulation) -> bool {
    let n = tri.tet_count();
    'outer: for mask in 0u64..(1u64 << n) {
        let sign = |t: usize| if mask >> t & 1 == 1 { -1 } else { 1 };
        for tet in 0..n {
            for face in 0..4 {
                if let Some(g) = tri.gluing(tet, face) {
                    if sign(tet) * sign(g.tet) * g.perm.sign() as i32 != -1 {
                        continue 'outer;
                    }
                }
            }
        }
        return true;
    }
    false
}

/// Composite Gauss–Legendre quadrature (5 points per panel).
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const NODES: [f64; 5] = [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
    const WEIGHTS: [f64; 5] =
        [0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1, 0.236_926_885_056_189_1];
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let mid = a + (i as f64 + 0.5) * h;
            NODES.iter().zip(WEIGHTS).map(|(x, w)| w * f(mid + 0.5 * h * x)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

/// `-∫_0^θ log|2 sin t| dt` for `0 <= θ < π`, splitting off the log singularity at 0.
pub fn lobachevsky_by_quadrature(theta: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    // log sin t = log t + log(sin t / t); the second term is smooth.
    let smooth = integrate(|t| if t == 0.0 { 0.0 } else { (t.sin() / t).ln() }, 0.0, theta, 200);
    -(theta * 2f64.ln() + theta * theta.ln() - theta + smooth)
}

pub fn regular_volume_by_quadrature() -> f64 {
    3.0 * lobachevsky_by_quadrature(PI / 3.0)
}

/// Closed fixtures with at most three tetrahedra, including relabelled and moved copies.
pub fn small_fixtures() -> Vec<(String, Triangulation)> {
    let mut out: Vec<(String, Triangulation)> = census::closed_fixtures()
        .into_iter()
        .filter(|(_, t)| t.tet_count() <= 3)
        .map(|(name, t)| (name.to_owned(), t))
        .collect();
    let fig8 = census::figure_eight();
    let sibling = census::figure_eight_sibling();
    let p = |r: usize| Perm4::from_rank(r).expect("rank below 24");
    out.push(("figure-eight relabelled".into(), fig8.relabel(&[1, 0], &[p(7), p(19)])));
    out.push(("figure-eight mirror".into(), fig8.mirror()));
    out.push(("sibling relabelled".into(), sibling.relabel(&[1, 0], &[p(3), p(22)])));
    out.push(("figure-eight 2-3".into(), apply(&fig8, Move::TwoThree { tet: 0, face: 0 }).expect("move")));
    out.push(("figure-eight 2-3 other".into(), apply(&fig8, Move::TwoThree { tet: 1, face: 2 }).expect("move")));
    out.push(("sibling 2-3".into(), apply(&sibling, Move::TwoThree { tet: 0, face: 1 }).expect("move")));
    let fig8_moved = apply(&fig8, Move::TwoThree { tet: 0, face: 0 }).expect("move");
    out.push(("figure-eight 2-3 relabelled".into(), fig8_moved.relabel(&[2, 0, 1], &[p(5), p(11), p(16)])));
    out
}
