use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use legdouble::doubling::{double_map, reduce_step};
use legdouble::plane_graph::CombMap;
use legdouble::polygon::enumerate_triangulations;

fn random_double(n: usize, a: usize, b: usize) -> CombMap {
    let all = enumerate_triangulations(n).unwrap();
    double_map(&all[a % all.len()], &all[b % all.len()]).unwrap()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[test]
fn canonical_form_survives_hundred_relabelings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = random_double(8, 17, 801);
    assert_eq!(m.vertex_count(), 12);
    let form = m.canonical_form();
    let mut perm: Vec<usize> = (0..m.dart_count()).collect();
    for _ in 0..100 {
        perm.shuffle(&mut rng);
        assert_eq!(m.relabel(&perm).unwrap().canonical_form(), form);
    }
}

#[test]
fn constructors_are_spherical() {
    let maps = [
        CombMap::theta(),
        CombMap::cube(),
        CombMap::tetrahedron(),
        CombMap::prism(3),
        CombMap::prism(6),
        CombMap::cube().truncate().unwrap(),
    ];
    for m in maps {
        assert!(m.is_spherical() && m.is_trivalent());
        assert_eq!(m.vertex_count() as i64 - m.edge_count() as i64 + m.faces().len() as i64, 2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_preserves_invariants(n in 3usize..=8, a in any::<usize>(), b in any::<usize>(), seed in any::<u64>()) {
        let m = random_double(n, a, b);
        let mut perm: Vec<usize> = (0..m.dart_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let r = m.relabel(&perm).unwrap();
        prop_assert_eq!(r.canonical_form(), m.canonical_form());
        prop_assert!(r.isomorphic(&m));
        prop_assert_eq!(sorted(r.face_degrees()), sorted(m.face_degrees()));
        prop_assert_eq!(sorted(m.mirror().face_degrees()), sorted(m.face_degrees()));
        prop_assert!(m.mirror().isomorphic(&m));
    }

    #[test]
    fn doubles_are_trivalent_spheres(n in 3usize..=9, a in any::<usize>(), b in any::<usize>()) {
        let m = random_double(n, a, b);
        prop_assert!(m.is_spherical() && m.is_trivalent() && m.is_connected());
        prop_assert_eq!(m.vertex_count(), 2 * n - 4);
        prop_assert_eq!(m.edge_count(), 3 * n - 6);
        prop_assert_eq!(m.faces().len(), n);
        prop_assert_eq!(m.face_degrees().iter().sum::<usize>(), 2 * m.edge_count());
        let dual = m.dual().unwrap();
        prop_assert_eq!(dual.vertex_count(), m.faces().len());
        prop_assert_eq!(dual.edges().len(), m.edge_count());
    }

    #[test]
    fn surgery_moves_keep_euler(n in 4usize..=8, a in any::<usize>(), b in any::<usize>()) {
        let m = random_double(n, a, b);
        for (_, next) in reduce_step(&m) {
            prop_assert!(next.is_spherical());
            prop_assert!(next.is_trivalent());
            prop_assert_eq!(next.vertex_count() + 2, m.vertex_count());
        }
    }

    #[test]
    fn json_round_trips(n in 3usize..=8, a in any::<usize>(), b in any::<usize>()) {
        let m = random_double(n, a, b);
        let back = CombMap::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back, m);
    }
}
