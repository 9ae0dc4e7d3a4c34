use jonesq_core::knot::{
    builtin_knots, kauffman_jones, orient_and_sign, parse_pd, r1_insert, r2_insert,
    random_braid_knot, random_moves, Colour, Kink, KnotDiagram,
};
use jonesq_core::potts::{eval_point, jones_value, partition_bruteforce, partition_contract};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

fn check_both_colourings(d: &KnotDiagram) {
    let faces = d.faces().unwrap();
    let col = d.checkerboard(0).unwrap();
    let other = faces
        .iter()
        .position(|f| col.colours[f.id] == Colour::Black)
        .unwrap();
    for outer in [0, other] {
        let g = d.tait_graph(&d.checkerboard(outer).unwrap()).unwrap();
        assert_eq!(g.edges().len(), d.crossing_count());
        for q in [2, 3, 4] {
            let t = eval_point(q).unwrap().t;
            let kauffman = kauffman_jones(d, t).unwrap();
            let potts = jones_value(&g, d.writhe(), q).unwrap();
            assert!(
                close(potts, kauffman, 1e-9),
                "{} outer {outer} q={q}: potts {potts} kauffman {kauffman}",
                d.pd()
            );
        }
    }
}

#[test]
fn random_braid_closures_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..60 {
        let pd = random_braid_knot(&mut rng, 1, 12);
        check_both_colourings(&orient_and_sign(&pd));
    }
}

#[test]
fn moved_builtins_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trefoil = orient_and_sign(&parse_pd(TREFOIL).unwrap());
    for _ in 0..25 {
        let (d, _) = random_moves(&trefoil, 4, &mut rng).unwrap();
        if d.crossing_count() <= 12 {
            check_both_colourings(&d);
        }
    }
}

#[test]
fn builtin_records_close_to_minus_one() {
    for k in builtin_knots() {
        for q in [2u32, 3, 4] {
            let z = partition_bruteforce(&k.tait_graph, q).unwrap();
            let c = partition_contract(&k.tait_graph, q).unwrap();
            assert!(close(c, z, 1e-12));
        }
        let v = jones_value(&k.tait_graph, k.writhe, 2).unwrap();
        assert!(close(v, k.exact_jones_at_i.unwrap(), 1e-12), "{}", k.name);
    }
}

#[test]
fn trefoil_kink_keeps_q3_value() {
    let trefoil = orient_and_sign(&parse_pd(TREFOIL).unwrap());
    let t = eval_point(3).unwrap().t;
    let before = kauffman_jones(&trefoil, t).unwrap();
    let after = r1_insert(&trefoil, 2, Kink::positive()).unwrap();
    let g = after.default_tait_graph().unwrap();
    let potts = jones_value(&g, after.writhe(), 3).unwrap();
    assert!(close(potts, before, 1e-9));
    let face = &trefoil.faces().unwrap()[0];
    let r2 = r2_insert(&trefoil, face.edges[0].0, face.edges[1].0).unwrap();
    assert_eq!(r2.writhe(), 3);
    assert_eq!(r2.crossing_count(), 5);
}
