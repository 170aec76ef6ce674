//! Beneath-beyond convex hull with a placing triangulation of the boundary.
//!
//! Works on integer points that affinely span `Z^r`. The same pass that builds
//! the hull accumulates the normalized volume: every visible boundary simplex
//! contributes one new simplex with apex at the inserted point.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact_linalg::{det_rows, dot, normal_vector, rank_of, vec_sub};

/// A facet of a full-dimensional hull: `normal . x <= offset` with equality on `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullFacet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Hull {
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub facets: Vec<HullFacet>,
    pub volume: BigInt,
}

struct Simplex {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// Hull of `points`, which must affinely span `Z^r` with `r >= 1`.
/// Indices in the result refer to `points`; duplicates are tolerated.
pub fn full_hull(points: &[Vec<BigInt>], r: usize) -> Hull {
    assert!(r >= 1);
    if r == 1 {
        return segment_hull(points);
    }

    let mut simplex = vec![0usize];
    let mut diffs: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if simplex.len() == r + 1 {
            break;
        }
        diffs.push(vec_sub(p, &points[0]));
        if rank_of(&diffs) == diffs.len() {
            simplex.push(i);
        } else {
            diffs.pop();
        }
    }
    assert_eq!(simplex.len(), r + 1, "points must span the lattice affinely");

    let scale = BigInt::from(r + 1);
    let mut center = vec![BigInt::zero(); r];
    for &i in &simplex {
        for (c, x) in center.iter_mut().zip(&points[i]) {
            *c += x;
        }
    }
    let make = |verts: Vec<usize>| -> Simplex {
        let base = &points[verts[0]];
        let rows: Vec<Vec<BigInt>> = verts[1..].iter().map(|&v| vec_sub(&points[v], base)).collect();
        let mut normal = normal_vector(&rows, r);
        let mut offset = dot(&normal, base);
        if dot(&normal, &center) > &scale * &offset {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        Simplex { verts, normal, offset }
    };

    let mut volume = det_rows(&diffs).abs();
    let mut facets: Vec<Option<Simplex>> = Vec::new();
    let mut ridges: BTreeMap<Vec<usize>, BTreeSet<usize>> = BTreeMap::new();
    let add = |facets: &mut Vec<Option<Simplex>>,
                   ridges: &mut BTreeMap<Vec<usize>, BTreeSet<usize>>,
                   s: Simplex| {
        let id = facets.len();
        for skip in 0..s.verts.len() {
            let ridge: Vec<usize> = s
                .verts
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &v)| v)
                .collect();
            ridges.entry(ridge).or_default().insert(id);
        }
        facets.push(Some(s));
    };
    for skip in 0..simplex.len() {
        let mut verts: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &v)| v)
            .collect();
        verts.sort_unstable();
        let s = make(verts);
        add(&mut facets, &mut ridges, s);
    }

    for (pi, p) in points.iter().enumerate() {
        if simplex.contains(&pi) {
            continue;
        }
        let visible: BTreeSet<usize> = facets
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.as_ref().filter(|f| dot(&f.normal, p) > f.offset).map(|_| i))
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut horizon: Vec<Vec<usize>> = Vec::new();
        for &fi in &visible {
            let f = facets[fi].as_ref().expect("visible facet is alive");
            let rows: Vec<Vec<BigInt>> = f.verts.iter().map(|&v| vec_sub(&points[v], p)).collect();
            volume += det_rows(&rows).abs();
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let owners = &ridges[&ridge];
                if owners.iter().any(|o| *o != fi && !visible.contains(o)) {
                    horizon.push(ridge);
                }
            }
        }
        for &fi in &visible {
            let f = facets[fi].take().expect("visible facet is alive");
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                if let Some(set) = ridges.get_mut(&ridge) {
                    set.remove(&fi);
                    if set.is_empty() {
                        ridges.remove(&ridge);
                    }
                }
            }
        }
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(pi);
            verts.sort_unstable();
            let s = make(verts);
            add(&mut facets, &mut ridges, s);
        }
    }

    let alive: Vec<&Simplex> = facets.iter().flatten().collect();
    let mut incident: BTreeMap<usize, BTreeSet<Vec<BigInt>>> = BTreeMap::new();
    for f in &alive {
        for &v in &f.verts {
            incident.entry(v).or_default().insert(f.normal.clone());
        }
    }
    let mut vertices: Vec<usize> = incident
        .iter()
        .filter(|(_, ns)| rank_of(&ns.iter().cloned().collect::<Vec<_>>()) == r)
        .map(|(&v, _)| v)
        .collect();
    vertices.sort_by(|a, b| points[*a].cmp(&points[*b]));

    let planes: BTreeSet<(Vec<BigInt>, BigInt)> =
        alive.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
    let hull_facets = planes
        .into_iter()
        .map(|(normal, offset)| {
            let on: Vec<usize> = vertices
                .iter()
                .copied()
                .filter(|&v| dot(&normal, &points[v]) == offset)
                .collect();
            HullFacet {
                normal,
                offset,
                points: on,
            }
        })
        .collect();

    Hull {
        dim: r,
        vertices,
        facets: hull_facets,
        volume,
    }
}

fn segment_hull(points: &[Vec<BigInt>]) -> Hull {
    let (mut lo, mut hi) = (0usize, 0usize);
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    let one = BigInt::from(1);
    Hull {
        dim: 1,
        vertices: vec![lo, hi],
        facets: vec![
            HullFacet {
                normal: vec![-one.clone()],
                offset: -points[lo][0].clone(),
                points: vec![lo],
            },
            HullFacet {
                normal: vec![one],
                offset: points[hi][0].clone(),
                points: vec![hi],
            },
        ],
        volume: &points[hi][0] - &points[lo][0],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::to_big;

    fn pts(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|p| to_big(p)).collect()
    }

    #[test]
    fn triangle_with_interior_point() {
        let p = pts(&[&[0, 0], &[2, 0], &[0, 3], &[1, 1]]);
        let h = full_hull(&p, 2);
        assert_eq!(h.vertices, vec![0, 2, 1]);
        assert_eq!(h.volume, BigInt::from(6));
        assert_eq!(h.facets.len(), 3);
    }

    #[test]
    fn collinear_points_are_not_vertices() {
        let p = pts(&[&[0, 0], &[1, 0], &[0, 1], &[2, 0], &[1, 1]]);
        let h = full_hull(&p, 2);
        let v: Vec<&Vec<BigInt>> = h.vertices.iter().map(|&i| &p[i]).collect();
        assert_eq!(v, vec![&to_big(&[0, 0]), &to_big(&[0, 1]), &to_big(&[1, 1]), &to_big(&[2, 0])]);
        assert_eq!(h.volume, BigInt::from(3));
    }

    #[test]
    fn cube_volume() {
        let mut p = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    p.push(to_big(&[x, y, z]));
                }
            }
        }
        let h = full_hull(&p, 3);
        assert_eq!(h.volume, BigInt::from(6));
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        for f in &h.facets {
            assert_eq!(f.points.len(), 4);
        }
    }
}
