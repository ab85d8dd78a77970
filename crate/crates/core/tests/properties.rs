mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use msd_strata::blowup_ideals::{
    disorderly_ideal, ideal_product, is_orderly, is_principal, Monomial, MonomialIdeal,
};
use msd_strata::cli::{graph_from_json, graph_to_json};
use msd_strata::degenerations::{enumerate_undegenerations, undegenerate};
use msd_strata::enumerate::{canonical_form, enumerate_with_keys};
use msd_strata::fixtures;
use msd_strata::residue_grc::{
    check_grc, check_grc_homological, grc_space_dims, GaussianRational, ResidueAssignment,
};
use msd_strata::twist_lattice::{integer_kernel, pm_class_count, smith_normal_form, IntegerMatrix};
use msd_strata::{validate, Edge, EnhancedLevelGraph, Vertex};

/// Fixtures plus every graph of the enumeration corpus.
fn graphs() -> &'static [EnhancedLevelGraph] {
    static ALL: OnceLock<Vec<EnhancedLevelGraph>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut out = vec![
            fixtures::gamma1(),
            fixtures::gamma2(),
            fixtures::double_edge(),
            fixtures::double_edge_triangle(),
            fixtures::cherry_2_3(),
            fixtures::cherry_2_2(),
            fixtures::two_tops(),
            fixtures::two_horizontal(),
        ];
        for (mu, c) in common::genus_zero_corpus()
            .into_iter()
            .chain(common::genus_one_corpus())
        {
            out.extend(
                enumerate_with_keys(&mu, c)
                    .unwrap()
                    .into_iter()
                    .map(|e| e.graph),
            );
        }
        out
    })
}

/// The same graph with vertices and edges renumbered.
fn relabel(
    g: &EnhancedLevelGraph,
    vperm: &[usize],
    eperm: &[usize],
    flip: &[bool],
) -> EnhancedLevelGraph {
    let mut vertices = vec![Vertex::new(0, 0, vec![]); vperm.len()];
    for (old, &new) in vperm.iter().enumerate() {
        vertices[new] = g.vertex(old).clone();
    }
    let mut edges = vec![
        Edge {
            ends: [0, 0],
            kappa: None
        };
        eperm.len()
    ];
    for (old, &new) in eperm.iter().enumerate() {
        let e = g.edge(old);
        let mut ends = [vperm[e.ends[0]], vperm[e.ends[1]]];
        if flip[old] {
            ends.swap(0, 1);
        }
        edges[new] = Edge {
            ends,
            kappa: e.kappa,
        };
    }
    EnhancedLevelGraph::new(g.mu().clone(), vertices, edges).unwrap()
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn graph_and_relabeling() -> impl Strategy<Value = (EnhancedLevelGraph, EnhancedLevelGraph)> {
    (0..graphs().len()).prop_flat_map(|i| {
        let g = graphs()[i].clone();
        let (nv, ne) = (g.vertices().len(), g.edges().len());
        (
            perm(nv),
            perm(ne),
            proptest::collection::vec(any::<bool>(), ne),
        )
            .prop_map(move |(vp, ep, flip)| (g.clone(), relabel(&g, &vp, &ep, &flip)))
    })
}

fn monomials(arity: usize, max_len: usize) -> impl Strategy<Value = Vec<Monomial>> {
    proptest::collection::vec(
        proptest::collection::vec(0u64..=5, arity).prop_map(Monomial::new),
        1..=max_len,
    )
}

fn vars(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn ideal(arity: usize) -> impl Strategy<Value = MonomialIdeal> {
    monomials(arity, 3).prop_map(move |m| MonomialIdeal::new(vars(arity), m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_decomposition(
        rows in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
        })
    ) {
        let m = IntegerMatrix::from_rows(rows[0].len(), &rows);
        let d = smith_normal_form(&m);
        prop_assert_eq!(d.u.mul(&m).mul(&d.v), d.s.clone());
        prop_assert!(d.u.determinant().abs().is_one());
        prop_assert!(d.v.determinant().abs().is_one());
        let inv = d.invariants();
        prop_assert!(inv.iter().all(|x| x.is_positive()));
        prop_assert!(inv.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        // square case: the product of invariants is |det|
        if m.rows() == m.cols() {
            let det = m.determinant().abs();
            let prod: BigInt = if inv.len() == m.rows() { inv.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(det, prod);
        }
        let ker = integer_kernel(&m);
        prop_assert_eq!(ker.rows(), m.cols() - inv.len());
        prop_assert!(m.mul(&ker.transpose()).to_rows().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn canonical_key_ignores_labels((g, h) in graph_and_relabeling()) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn invariants_ignore_labels((g, h) in graph_and_relabeling()) {
        prop_assert!(validate(&h).valid);
        prop_assert_eq!(grc_space_dims(&g), grc_space_dims(&h));
        prop_assert_eq!(pm_class_count(&g), pm_class_count(&h));
    }

    #[test]
    fn undegenerations_compose(i in 0..graphs().len(), a in any::<u32>(), b in any::<u32>()) {
        let g = &graphs()[i];
        let levels: Vec<i64> = g.lower_levels().collect();
        let horizontal = g.horizontal_edges();
        let pick = |mask: u32, n: usize| -> Vec<usize> { (0..n).filter(|&k| mask >> k & 1 == 1).collect() };
        // first step keeps the levels in `a`, second keeps those also in `b`
        let keep1: Vec<i64> = pick(a, levels.len()).into_iter().map(|k| levels[k]).collect();
        let keep2: Vec<i64> = keep1.iter().copied().enumerate().filter(|&(k, _)| b >> k & 1 == 1).map(|(_, l)| l).collect();
        let smooth1: Vec<usize> = pick(a >> 16, horizontal.len()).into_iter().map(|k| horizontal[k]).collect();
        let smooth2: Vec<usize> = horizontal.iter().copied().filter(|e| smooth1.contains(e) || (b >> 16) & 1 == 1).collect();

        let (mid, u1) = undegenerate(g, &keep1, &smooth1).unwrap();
        let keep_mid: Vec<i64> = keep2.iter().map(|&l| u1.map_level(l)).collect();
        let smooth_mid: Vec<usize> = smooth2
            .iter()
            .filter(|e| !smooth1.contains(e))
            .map(|&e| u1.edge_map[e].unwrap())
            .collect();
        let (two_step, _) = undegenerate(&mid, &keep_mid, &smooth_mid).unwrap();
        let (direct, _) = undegenerate(g, &keep2, &smooth2).unwrap();
        prop_assert_eq!(canonical_form(&two_step).1, canonical_form(&direct).1);
        prop_assert!(validate(&direct).valid);
        prop_assert_eq!(direct.genus(), g.genus());
        prop_assert_eq!(direct.mu(), g.mu());
    }

    #[test]
    fn checkers_agree_on_consistent_residues(
        i in 0..graphs().len(),
        coeffs in proptest::collection::vec((-1i64..=1, -1i64..=1), 8),
    ) {
        let g = &graphs()[i];
        let ne = g.edges().len();
        // residue theorem at pole-free vertices, one variable per edge
        let rows: Vec<Vec<i64>> = (0..g.vertices().len())
            .filter(|&v| !g.has_pole_leg(v))
            .map(|v| {
                (0..ne)
                    .map(|e| {
                        if g.edge(e).is_loop() {
                            0
                        } else if g.is_horizontal(e) {
                            (g.top(e) == v) as i64 - (g.bottom(e) == v) as i64
                        } else {
                            (g.bottom(e) == v) as i64
                        }
                    })
                    .collect()
            })
            .collect();
        let basis = if rows.is_empty() {
            IntegerMatrix::identity(ne)
        } else {
            integer_kernel(&IntegerMatrix::from_rows(ne, &rows))
        };
        let mut re = vec![BigInt::zero(); ne];
        let mut im = vec![BigInt::zero(); ne];
        for (k, &(a, b)) in coeffs.iter().enumerate().take(basis.rows()) {
            for e in 0..ne {
                re[e] += basis.row(k)[e].clone() * a;
                im[e] += basis.row(k)[e].clone() * b;
            }
        }
        let mut rho = ResidueAssignment::default();
        for e in 0..ne {
            let z = GaussianRational::from_fractions(re[e].clone(), BigInt::one(), im[e].clone(), BigInt::one()).unwrap();
            if g.is_horizontal(e) {
                rho.horizontal.insert(e, z);
            } else {
                rho.vertical.insert(e, z);
            }
        }
        let direct = check_grc(g, &rho).unwrap();
        let cycle = check_grc_homological(g, &rho).unwrap();
        prop_assert_eq!(direct.pass, cycle.pass, "{:?}", g);
    }

    #[test]
    fn ideal_product_laws(a in ideal(3), b in ideal(3), c in ideal(3)) {
        let ab = ideal_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &ideal_product(&b, &a).unwrap());
        prop_assert_eq!(
            ideal_product(&ab, &c).unwrap(),
            ideal_product(&a, &ideal_product(&b, &c).unwrap()).unwrap()
        );
        for g in ab.generators() {
            prop_assert!(a.contains(g) && b.contains(g));
        }
    }

    #[test]
    fn orderly_iff_principal(arity in 1usize..=4, h in (1usize..=4).prop_flat_map(|n| monomials(n, 4).prop_map(move |m| (n, m)))) {
        let _ = arity;
        let (n, h) = h;
        let d = disorderly_ideal(&vars(n), &h).unwrap();
        prop_assert_eq!(is_principal(&d).is_some(), is_orderly(&h));
    }
}

#[test]
fn json_round_trip_on_corpus() {
    for g in graphs() {
        assert_eq!(&graph_from_json(&graph_to_json(g)).unwrap(), g);
    }
}

#[test]
fn genus_one_enumeration_matches_brute_force() {
    for (mu, c) in common::genus_one_corpus() {
        let fast: std::collections::BTreeSet<_> = enumerate_with_keys(&mu, c)
            .unwrap()
            .into_iter()
            .map(|e| e.key)
            .collect();
        assert_eq!(fast, common::brute_force_keys(&mu, c), "{mu}");
    }
}

#[test]
fn undegenerations_stay_valid() {
    for g in graphs() {
        for u in enumerate_undegenerations(g) {
            assert!(validate(&u.graph).valid, "{:?} from {g:?}", u.graph);
        }
    }
}
