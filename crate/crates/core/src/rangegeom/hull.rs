//! Convex hulls and their volumes in one to three dimensions.
//!
//! Orientation signs come from adaptive-precision predicates, so hull
//! topology is exact for the given floating-point input.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use robust::{orient2d, orient3d, Coord, Coord3D};

use crate::rng::task_rng;

const HULL_SHUFFLE_SEED: u64 = 0x6875_6c6c;

/// Number of affinely independent directions spanned by `points`, with
/// residuals below `tol·scale` treated as zero.
pub fn affine_rank(points: &[Vec<f64>], tol: f64) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let k = first.len();
    let mut diffs: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = diffs.iter().map(|d| norm(d)).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    for _ in 0..k {
        let (idx, best) = diffs
            .iter()
            .enumerate()
            .map(|(i, d)| (i, norm(d)))
            .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol * scale {
            break;
        }
        rank += 1;
        let q: Vec<f64> = diffs[idx].iter().map(|x| x / best).collect();
        for d in diffs.iter_mut() {
            let c: f64 = d.iter().zip(&q).map(|(a, b)| a * b).sum();
            for (x, qi) in d.iter_mut().zip(&q) {
                *x -= c * qi;
            }
        }
    }
    rank
}

/// Counter-clockwise hull (monotone chain), without collinear points.
pub fn hull_2d(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]| {
        orient2d(
            Coord { x: o[0], y: o[1] },
            Coord { x: a[0], y: a[1] },
            Coord { x: b[0], y: b[1] },
        )
    };
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of a simple polygon (absolute value).
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        s += a[0] * b[1] - b[0] * a[1];
    }
    0.5 * s.abs()
}

/// Triangulated hull surface with outward-oriented faces.
#[derive(Debug, Clone)]
pub struct Hull3 {
    pub points: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl Hull3 {
    pub fn volume(&self) -> f64 {
        let o = self.points[self.faces[0][0]];
        let mut v = 0.0;
        for f in &self.faces {
            let a = sub(self.points[f[0]], o);
            let b = sub(self.points[f[1]], o);
            let c = sub(self.points[f[2]], o);
            v += dot(a, cross(b, c));
        }
        v.abs() / 6.0
    }

    /// Indices of points that appear as hull vertices.
    pub fn vertex_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.faces.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn c3(p: [f64; 3]) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Positive when `p` is strictly inside relative to the outward face.
fn inside(points: &[[f64; 3]], f: &[usize; 3], p: [f64; 3]) -> f64 {
    orient3d(c3(points[f[0]]), c3(points[f[1]]), c3(points[f[2]]), c3(p))
}

/// Randomized incremental hull. Returns `None` when the points do not span
/// three dimensions.
pub fn hull_3d(input: &[[f64; 3]]) -> Option<Hull3> {
    let mut points = input.to_vec();
    points.sort_by(|a, b| {
        a[0].total_cmp(&b[0])
            .then(a[1].total_cmp(&b[1]))
            .then(a[2].total_cmp(&b[2]))
    });
    points.dedup();
    if points.len() < 4 {
        return None;
    }
    let seed = initial_simplex(&points)?;

    let mut faces: Vec<[usize; 3]> = Vec::new();
    let [a, b, c, d] = seed;
    for (f, opp) in [([a, b, c], d), ([a, d, b], c), ([b, d, c], a), ([c, d, a], b)] {
        let f = if inside(&points, &f, points[opp]) < 0.0 {
            [f[0], f[2], f[1]]
        } else {
            f
        };
        faces.push(f);
    }

    let mut order: Vec<usize> = (0..points.len()).filter(|i| !seed.contains(i)).collect();
    order.shuffle(&mut task_rng(HULL_SHUFFLE_SEED, 0));

    for &pi in &order {
        let p = points[pi];
        let visible: Vec<bool> = faces.iter().map(|f| inside(&points, f, p) < 0.0).collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut vis_edges: HashSet<(usize, usize)> = HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, v)| **v) {
            for e in 0..3 {
                vis_edges.insert((f[e], f[(e + 1) % 3]));
            }
        }
        let mut next: Vec<[usize; 3]> = Vec::with_capacity(faces.len() + 4);
        for (f, _) in faces.iter().zip(&visible).filter(|(_, v)| !**v) {
            next.push(*f);
        }
        for &(u, v) in &vis_edges {
            if !vis_edges.contains(&(v, u)) {
                next.push([u, v, pi]);
            }
        }
        faces = next;
    }
    Some(Hull3 { points, faces })
}

fn initial_simplex(points: &[[f64; 3]]) -> Option<[usize; 4]> {
    let a = 0;
    let dist2 = |p: [f64; 3], q: [f64; 3]| {
        let d = sub(p, q);
        dot(d, d)
    };
    let b = (0..points.len()).max_by(|&i, &j| {
        dist2(points[i], points[a]).total_cmp(&dist2(points[j], points[a]))
    })?;
    let ab = sub(points[b], points[a]);
    let c = (0..points.len()).max_by(|&i, &j| {
        let ci = cross(ab, sub(points[i], points[a]));
        let cj = cross(ab, sub(points[j], points[a]));
        dot(ci, ci).total_cmp(&dot(cj, cj))
    })?;
    let tri = [a, b, c];
    let d = (0..points.len()).max_by(|&i, &j| {
        inside(points, &tri, points[i])
            .abs()
            .total_cmp(&inside(points, &tri, points[j]).abs())
    })?;
    if inside(points, &tri, points[d]) == 0.0 || a == b || c == a || c == b {
        return None;
    }
    Some([a, b, c, d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn square_hull_and_area() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5], [0.5, 0.0]];
        let h = hull_2d(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(polygon_area(&h), 1.0);
        let tri = hull_2d(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(polygon_area(&tri), 0.5);
    }

    #[test]
    fn cube_volume() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push([(i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64]);
        }
        pts.push([0.5, 0.5, 0.5]);
        pts.push([0.5, 0.5, 1.0]);
        let h = hull_3d(&pts).unwrap();
        assert!((h.volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sphere_points_volume_and_faces() {
        let mut rng = task_rng(1, 0);
        let pts: Vec<[f64; 3]> = (0..400)
            .map(|_| {
                let v = crate::qlinalg::random::random_real_unit(3, &mut rng);
                [v[0], v[1], v[2]]
            })
            .collect();
        let h = hull_3d(&pts).unwrap();
        // Euler: every point on a sphere is a vertex, F = 2V − 4.
        assert_eq!(h.faces.len(), 2 * h.vertex_indices().len() - 4);
        let v = h.volume();
        assert!(v < 4.0 * std::f64::consts::PI / 3.0 && v > 3.8);
        // all points on the inner side of every face
        for f in &h.faces {
            for p in &pts {
                assert!(inside(&h.points, f, *p) >= 0.0);
            }
        }
        let _ = rng.random::<u8>();
    }

    #[test]
    fn coplanar_input_is_rejected() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]];
        assert!(hull_3d(&pts).is_none());
    }

    #[test]
    fn rank_detection() {
        let line = vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]];
        assert_eq!(affine_rank(&line, 1e-9), 1);
        let plane = vec![vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]];
        assert_eq!(affine_rank(&plane, 1e-9), 2);
        assert_eq!(affine_rank(&[vec![3.0]], 1e-9), 0);
    }
}
