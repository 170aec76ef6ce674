//! Deformations f + Σ θ_i(t)·h_i: Newton polygon constancy and member-independent reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cones::dd::ConeHrep;
use crate::cones::{enumerate_faces, Cone, FaceId};
use crate::error::{Result, ToricError};
use crate::exact_linalg::{dot, vec_sub, DualVector, LatticeVector};
use crate::invariants::{
    brasselet_complete_intersection, brasselet_hypersurface, chi_orbit, critical_orbits, morse_count, resolve_eu_table,
    FaceTerm, MorseMode, Outcome, SkippedFace, Variety,
};
use crate::newton::{newton_restriction, ToricFunction};

/// A family `base + Σ θ_i(t)·h_i`; the θ_i are labels only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deformation {
    pub base: ToricFunction,
    pub perturbations: Vec<ToricFunction>,
    pub parameter: String,
}

impl Deformation {
    pub fn trivial(base: ToricFunction) -> Self {
        Deformation {
            base,
            perturbations: Vec::new(),
            parameter: "t".into(),
        }
    }

    /// `base + h_i` for the listed perturbation indices.
    pub fn member(&self, which: &[usize]) -> Result<ToricFunction> {
        let mut f = self.base.clone();
        let mut name = self.base.name.clone();
        for &i in which {
            let h = &self.perturbations[i];
            name = format!("{}+{}", name, h.name);
            f = f.plus(h, &name)?;
        }
        Ok(f)
    }
}

/// Halfspaces ⟨a, x⟩ ≥ level describing Γ₊ of a support set.
///
/// Built from the cone over {1} × supp and {0} × σ̌; the trivial x₀ ≥ 0 facet is dropped.
pub(crate) struct NewtonHrep {
    pub facets: Vec<(DualVector, BigInt)>,
}

impl NewtonHrep {
    pub fn new(support: &[&LatticeVector], c: &Cone) -> NewtonHrep {
        let d = c.ambient_rank();
        let mut gens: Vec<Vec<BigInt>> = support
            .iter()
            .map(|s| std::iter::once(BigInt::one()).chain(s.0.iter().cloned()).collect())
            .collect();
        gens.extend(
            c.generators()
                .iter()
                .map(|w| std::iter::once(BigInt::zero()).chain(w.0.iter().cloned()).collect()),
        );
        let h = ConeHrep::new(&gens, d + 1).expect("Γ₊ of a pointed cone contains no line");
        let lb = h.basis().expect("full-dimensional").clone();
        let mut facets: Vec<(DualVector, BigInt)> = h
            .local_normals
            .iter()
            .map(|n| {
                // local coordinates are ambient ones for a full-rank span
                debug_assert_eq!(lb.rank(), d + 1);
                (DualVector(n[1..].to_vec()), -n[0].clone())
            })
            .filter(|(a, _)| !a.is_zero())
            .collect();
        facets.sort();
        NewtonHrep { facets }
    }

    /// First violated (normal, level), if any.
    pub fn violation(&self, x: &LatticeVector) -> Option<(&DualVector, &BigInt, BigInt)> {
        self.facets.iter().find_map(|(a, l)| {
            let v = dot(&a.0, &x.0);
            (&v < l).then_some((a, l, v))
        })
    }

    /// Facets whose normal is positive on the interior of σ̌ (the bounded directions).
    pub fn compact(&self, c: &Cone) -> Vec<&(DualVector, BigInt)> {
        self.facets
            .iter()
            .filter(|(a, _)| c.generators().iter().all(|w| dot(&a.0, &w.0) > BigInt::zero()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstancyWitness {
    pub perturbation: String,
    pub point: LatticeVector,
    pub normal: DualVector,
    pub level: BigInt,
    pub value: BigInt,
}

impl ConstancyWitness {
    pub fn describe(&self) -> String {
        format!(
            "{} has support point {} with <{},{}> = {} < {}",
            self.perturbation, self.point, self.normal, self.point, self.value, self.level
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstancyVerdict {
    pub family: String,
    pub constant: bool,
    pub witness: Option<ConstancyWitness>,
    /// Compact facets of every Γ₊(h_i) ∩ Δ avoid those of Γ₊(f) ∩ Δ (sufficient, not necessary).
    pub facet_disjointness: bool,
    /// Halfspaces of Γ₊(f) that were tested.
    pub halfspaces: Vec<(DualVector, BigInt)>,
}

/// conv(a) ∩ conv(b) ≠ ∅ for finite point sets in the same space.
fn hulls_meet(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let k = a[0].len();
    let gens: Vec<Vec<BigInt>> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| std::iter::once(BigInt::one()).chain(vec_sub(p, q)).collect()))
        .collect();
    let h = ConeHrep::new(&gens, k + 1).expect("homogenized points span no line");
    let mut target = vec![BigInt::zero(); k + 1];
    target[0] = BigInt::one();
    h.contains(&target)
}

/// Γ₊(f + Σ h_i) = Γ₊(f) iff every support point of every h_i lies in Γ₊(f).
pub fn newton_constancy_check(d: &Deformation, c: &Cone) -> Result<ConstancyVerdict> {
    d.base.check_in_cone(c)?;
    for h in &d.perturbations {
        h.check_in_cone(c)?;
    }
    let supp: Vec<&LatticeVector> = d.base.support().collect();
    let hrep = NewtonHrep::new(&supp, c);
    let witness = d.perturbations.iter().find_map(|h| {
        h.support().find_map(|p| {
            hrep.violation(p).map(|(a, l, v)| ConstancyWitness {
                perturbation: h.name.clone(),
                point: p.clone(),
                normal: a.clone(),
                level: l.clone(),
                value: v,
            })
        })
    });

    let mut disjoint = true;
    'outer: for face in enumerate_faces(c).iter().filter(|f| f.dim > 0 && d.base.meets(f)) {
        let base = newton_restriction(&d.base, c, face)?;
        for h in d.perturbations.iter().filter(|h| h.meets(face)) {
            let hd = newton_restriction(h, c, face)?;
            for g in &hd.compact_facets {
                if base.compact_facets.iter().any(|b| hulls_meet(&g.local_vertices, &b.local_vertices)) {
                    disjoint = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(ConstancyVerdict {
        family: d.base.name.clone(),
        constant: witness.is_none(),
        witness,
        facet_disjointness: disjoint,
        halfspaces: hrep.facets,
    })
}

/// Everything the Morse count consumes, stripped of function names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberBundle {
    pub critical_orbits: Vec<FaceId>,
    pub chi: Vec<(FaceId, BigInt)>,
    pub hypersurface_terms: Vec<FaceTerm>,
    pub ci_terms: Vec<FaceTerm>,
    pub ci_skipped: Vec<SkippedFace>,
    pub m: Option<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub f: String,
    pub g: String,
    pub bundle: MemberBundle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub f_verdict: ConstancyVerdict,
    pub g_verdict: ConstancyVerdict,
    pub members: Vec<FamilyMember>,
    /// All member bundles equal the base bundle.
    pub identical: bool,
    pub hypotheses: Vec<String>,
}

impl FamilyReport {
    pub fn common(&self) -> &MemberBundle {
        &self.members[0].bundle
    }
}

pub const FAMILY_HYPOTHESES: [&str; 2] = [
    "the family g_s is admissible",
    "each g_s is tractable at the origin with respect to f_t",
];

fn bundle(
    f: &ToricFunction,
    g: &ToricFunction,
    c: &Cone,
    eu_x: Option<&BTreeMap<FaceId, BigInt>>,
    eu_xg: Option<&BTreeMap<FaceId, BigInt>>,
) -> Result<MemberBundle> {
    let empty = BTreeMap::new();
    let tx = resolve_eu_table(c, eu_x.unwrap_or(&empty), &Variety::Ambient)?;
    let txg = resolve_eu_table(c, eu_xg.unwrap_or(&empty), &Variety::Cut(vec![g.clone()]))?;
    let crit = critical_orbits(g, c);
    let chi = crit
        .iter()
        .map(|face| Ok((face.id.clone(), chi_orbit(f, c, face)?)))
        .collect::<Result<Vec<_>>>()?;
    let h = brasselet_hypersurface(f, c, &tx)?;
    let ci = brasselet_complete_intersection(std::slice::from_ref(g), f, c, &txg)?;
    let m = if eu_x.is_some() || eu_xg.is_some() {
        Some(morse_count(f, g, c, &tx, &txg, MorseMode::Combinatorial, None, &[])?.outcome)
    } else {
        None
    };
    Ok(MemberBundle {
        critical_orbits: crit.into_iter().map(|f| f.id).collect(),
        chi,
        hypersurface_terms: h.terms,
        ci_terms: ci.terms,
        ci_skipped: ci.skipped,
        m,
    })
}

/// Recomputes the Morse-count inputs for the base pair, each single
/// perturbation and the full sum, and compares them.
///
/// The bundles depend on supports only, so with both Newton polygons constant
/// they must coincide. `m` is filled in when Eu tables are given.
pub fn family_invariant_report(
    f_family: &Deformation,
    g_family: &Deformation,
    c: &Cone,
    eu_x: Option<&BTreeMap<FaceId, BigInt>>,
    eu_xg: Option<&BTreeMap<FaceId, BigInt>>,
    asserted: &[String],
) -> Result<FamilyReport> {
    let fv = newton_constancy_check(f_family, c)?;
    let gv = newton_constancy_check(g_family, c)?;
    for v in [&fv, &gv] {
        if let Some(w) = &v.witness {
            return Err(ToricError::ConstancyFailed {
                family: v.family.clone(),
                detail: w.describe(),
            });
        }
    }
    let all_f: Vec<usize> = (0..f_family.perturbations.len()).collect();
    let all_g: Vec<usize> = (0..g_family.perturbations.len()).collect();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![], vec![])];
    pairs.extend(all_f.iter().map(|&i| (vec![i], vec![])));
    pairs.extend(all_g.iter().map(|&j| (vec![], vec![j])));
    if all_f.len() + all_g.len() > 1 {
        pairs.push((all_f.clone(), all_g.clone()));
    }
    let members: Vec<FamilyMember> = pairs
        .par_iter()
        .map(|(fi, gi)| {
            let f = f_family.member(fi)?;
            let g = g_family.member(gi)?;
            Ok(FamilyMember {
                bundle: bundle(&f, &g, c, eu_x, eu_xg)?,
                f: f.name,
                g: g.name,
            })
        })
        .collect::<Result<_>>()?;
    let identical = members.iter().all(|m| m.bundle == members[0].bundle);
    let mut hypotheses: Vec<String> = FAMILY_HYPOTHESES.iter().map(|h| h.to_string()).collect();
    hypotheses.extend(asserted.iter().cloned());
    Ok(FamilyReport {
        f_verdict: fv,
        g_verdict: gv,
        members,
        identical,
        hypotheses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fam(base: &[(&[i64], i64)], hs: &[&[(&[i64], i64)]]) -> Deformation {
        Deformation {
            base: ToricFunction::from_i64("f", base).unwrap(),
            perturbations: hs
                .iter()
                .enumerate()
                .map(|(i, h)| ToricFunction::from_i64(&format!("h{}", i + 1), h).unwrap())
                .collect(),
            parameter: "t".into(),
        }
    }

    const CUSP: [(&[i64], i64); 2] = [(&[2, 0], 1), (&[0, 3], 1)];

    #[test]
    fn constancy_examples() {
        let c = Cone::octant(2).unwrap();
        let v = newton_constancy_check(&fam(&CUSP, &[&[(&[1, 1], 1)]]), &c).unwrap();
        assert!(!v.constant);
        let w = v.witness.unwrap();
        assert_eq!(w.point, LatticeVector::from_i64(&[1, 1]));
        assert_eq!(w.normal, DualVector::from_i64(&[3, 2]));
        assert_eq!((w.value, w.level), (BigInt::from(5), BigInt::from(6)));

        let v = newton_constancy_check(&fam(&CUSP, &[&[(&[1, 2], 1)]]), &c).unwrap();
        assert!(v.constant && v.facet_disjointness);

        // h = f: constant although the facets coincide
        let v = newton_constancy_check(&fam(&CUSP, &[&CUSP]), &c).unwrap();
        assert!(v.constant && !v.facet_disjointness);

        let v = newton_constancy_check(&fam(&CUSP, &[]), &c).unwrap();
        assert!(v.constant && v.witness.is_none());
    }

    #[test]
    fn hrep_of_cusp() {
        let c = Cone::octant(2).unwrap();
        let f = ToricFunction::from_i64("f", &CUSP).unwrap();
        let h = NewtonHrep::new(&f.support().collect::<Vec<_>>(), &c);
        let compact: Vec<String> = h.compact(&c).iter().map(|(a, l)| format!("{}>={}", a, l)).collect();
        assert_eq!(compact, vec!["(3,2)>=6"]);
    }

    #[test]
    fn cusp_family_report() {
        let c = Cone::octant(2).unwrap();
        // f_t = l + t·xy with l generic linear, g_s = y² − x³ + s·x²y
        let l = ToricFunction::generic_linear("l", &c, None).unwrap();
        let f = Deformation {
            base: l,
            perturbations: vec![ToricFunction::from_i64("h1", &[(&[1, 1], 1)]).unwrap()],
            parameter: "t".into(),
        };
        let g = Deformation {
            base: ToricFunction::from_i64("g", &[(&[0, 2], 1), (&[3, 0], -1)]).unwrap(),
            perturbations: vec![ToricFunction::from_i64("k1", &[(&[2, 1], 1)]).unwrap()],
            parameter: "s".into(),
        };
        let empty = BTreeMap::new();
        let r = family_invariant_report(&f, &g, &c, Some(&empty), Some(&empty), &[]).unwrap();
        assert!(r.identical);
        assert_eq!(r.members.len(), 4);
        assert_eq!(r.common().m, Some(Outcome::Value(BigInt::one())));
    }

    #[test]
    fn literal_cusp_pair_gives_five() {
        // f_t = x² + y³ + t·xy² against g = y² − x³
        let c = Cone::octant(2).unwrap();
        let f = fam(&CUSP, &[&[(&[1, 2], 1)]]);
        let g = Deformation::trivial(ToricFunction::from_i64("g", &[(&[0, 2], 1), (&[3, 0], -1)]).unwrap());
        let empty = BTreeMap::new();
        let r = family_invariant_report(&f, &g, &c, Some(&empty), Some(&empty), &[]).unwrap();
        assert!(r.identical);
        assert_eq!(r.common().m, Some(Outcome::Value(BigInt::from(5))));
    }

    #[test]
    fn failing_family_is_rejected() {
        let c = Cone::octant(2).unwrap();
        let f = fam(&CUSP, &[&[(&[1, 1], 1)]]);
        let g = Deformation::trivial(ToricFunction::from_i64("g", &[(&[0, 2], 1), (&[3, 0], -1)]).unwrap());
        let err = family_invariant_report(&f, &g, &c, None, None, &[]).unwrap_err();
        assert!(matches!(err, ToricError::ConstancyFailed { .. }));
        assert!(err.to_string().contains("(1,1)"));
    }

    fn support(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(0i64..=5, dim), 1..5)
            .prop_filter("nonzero", |v| v.iter().all(|e| e.iter().any(|x| *x != 0)))
    }

    fn func(name: &str, s: &[Vec<i64>]) -> ToricFunction {
        let t: Vec<(&[i64], i64)> = s.iter().map(|e| (e.as_slice(), 1)).collect();
        ToricFunction::from_i64(name, &t).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn pass_implies_pairing_inequalities(base in support(2), h in support(2)) {
            let c = Cone::octant(2).unwrap();
            let d = Deformation { base: func("f", &base), perturbations: vec![func("h", &h)], parameter: "t".into() };
            let v = newton_constancy_check(&d, &c).unwrap();
            for face in enumerate_faces(&c).iter().filter(|f| f.dim > 0 && d.base.meets(f)) {
                let data = newton_restriction(&d.base, &c, face).unwrap();
                for cf in &data.compact_facets {
                    let low = d.perturbations[0]
                        .support_on(face)
                        .into_iter()
                        .map(|p| dot(&cf.normal.0, &face.local_coords(&p.0).unwrap()))
                        .min();
                    if v.constant {
                        if let Some(low) = low {
                            prop_assert!(low >= cf.level);
                        }
                    }
                }
            }
        }

        #[test]
        fn interior_perturbation_changes_nothing(base in support(2), g in support(2), t in proptest::collection::vec(0i64..=2, 2)) {
            // push a support point of f deeper into Γ₊(f)
            let c = Cone::octant(2).unwrap();
            let f = func("f", &base);
            let mut axes = g.clone();
            axes.push(vec![1, 0]);
            axes.push(vec![0, 1]);
            let g = func("g", &axes);
            let inner: Vec<i64> = base[0].iter().zip(&t).map(|(a, b)| a + b).collect();
            let fam_f = Deformation { base: f, perturbations: vec![func("h", &[inner])], parameter: "t".into() };
            let r = family_invariant_report(&fam_f, &Deformation::trivial(g), &c, Some(&BTreeMap::new()), Some(&BTreeMap::new()), &[]).unwrap();
            prop_assert!(r.identical);
        }

        #[test]
        fn meets_iff_large_dilate_in_gamma(base in support(3)) {
            let c = Cone::octant(3).unwrap();
            let f = func("f", &base);
            let hrep = NewtonHrep::new(&f.support().collect::<Vec<_>>(), &c);
            for face in enumerate_faces(&c).iter().filter(|f| f.dim > 0) {
                let mut v = vec![BigInt::zero(); 3];
                for &i in face.id.indices() {
                    for (a, b) in v.iter_mut().zip(&c.generators()[i].0) {
                        *a += b * BigInt::from(100);
                    }
                }
                let inside = hrep.violation(&LatticeVector(v)).is_none();
                prop_assert_eq!(inside, f.meets(face));
            }
        }
    }
}
