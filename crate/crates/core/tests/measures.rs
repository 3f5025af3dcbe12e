mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use toric_core::concave_calculus::ConcavePA;
use toric_core::measures::{mixed_monge_ampere, mixed_volume, monge_ampere, stokes_residual};
use toric_core::scalar::qfact;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn monge_ampere_mass_is_volume(f in (1usize..=3).prop_flat_map(|n| pa_on_space(n, n + 4, 2))) {
        let m = monge_ampere(&f).unwrap();
        prop_assert!(m.is_nonnegative());
        prop_assert_eq!(m.total_mass(), f.stability_set().ambient_volume().unwrap());
    }

    #[test]
    fn support_function_measure_is_a_point_mass(p in lattice_polytope(2, 3, 3)) {
        let psi = ConcavePA::support_function(&p).unwrap();
        let m = monge_ampere(&psi).unwrap();
        prop_assert_eq!(m.atoms().len(), 1);
        prop_assert!(m.atoms()[0].iter().all(Zero::is_zero));
        prop_assert_eq!(m.total_mass(), p.ambient_volume().unwrap());
    }

    #[test]
    fn stokes_residual_vanishes(f in (1usize..=3).prop_flat_map(|n| pa_on_space(n, n + 4, 2))) {
        prop_assert!(stokes_residual(&f).unwrap().is_zero());
    }

    #[test]
    fn mixed_monge_ampere_symmetric_and_additive(f in pa_on_space(2, 4, 2), g in pa_on_space(2, 4, 2), h in pa_on_space(2, 4, 2)) {
        let fg = mixed_monge_ampere(&[f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(&fg, &mixed_monge_ampere(&[g.clone(), f.clone()]).unwrap());
        let lhs = mixed_monge_ampere(&[f.add(&g).unwrap(), h.clone()]).unwrap();
        let rhs = mixed_monge_ampere(&[f.clone(), h.clone()]).unwrap().add_scaled(&mixed_monge_ampere(&[g.clone(), h.clone()]).unwrap(), &toric_core::scalar::q(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_mass_is_mixed_volume(fs in (2usize..=3).prop_flat_map(|n| prop::collection::vec(pa_on_space(n, n + 3, 2), n))) {
        let n = fs.len();
        let mass = mixed_monge_ampere(&fs).unwrap().total_mass();
        let stabs: Vec<_> = fs.iter().map(|f| f.stability_set()).collect();
        prop_assert_eq!(qfact(n) * mass, mixed_volume(&stabs).unwrap());
    }

    #[test]
    fn mixed_volume_properties(a in lattice_polytope(2, 3, 2), b in lattice_polytope(2, 3, 2), c in lattice_polytope(2, 3, 2)) {
        let ab = mixed_volume(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(&ab, &mixed_volume(&[b.clone(), a.clone()]).unwrap());
        let sum = a.minkowski_sum(&c).unwrap();
        prop_assert_eq!(mixed_volume(&[sum.clone(), b.clone()]).unwrap(), &ab + mixed_volume(&[c.clone(), b.clone()]).unwrap());
        prop_assert!(ab <= mixed_volume(&[sum, b.clone()]).unwrap());
        prop_assert_eq!(mixed_volume(&[a.clone(), a.clone()]).unwrap(), qfact(2) * a.ambient_volume().unwrap());
    }

    #[test]
    fn mixed_volume_diagonal_in_dimension_three(a in lattice_polytope(3, 2, 2)) {
        prop_assert_eq!(mixed_volume(&[a.clone(), a.clone(), a.clone()]).unwrap(), qfact(3) * a.ambient_volume().unwrap());
    }
}
