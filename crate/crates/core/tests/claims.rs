//! The optimum-size correspondences behind both gadget constructions,
//! checked end to end on small random graphs with the brute-force oracle
//! on each side.

use domset_core::{
    backward_cert_a, backward_cert_b, build_gadget_a, build_gadget_b, forward_cert_a,
    forward_cert_b, generate_random_graph, solve_bruteforce, validate_params, verify, Params,
    SolveStatus,
};

#[test]
fn gadget_a_adds_exactly_ell_to_the_domination_number() {
    for seed in 0..8u64 {
        let n = 4 + (seed % 3) as usize;
        let g = generate_random_graph(n, 0.4, seed, true);
        let ds_params = validate_params(Params::new(1, 1, 1, 1), &g).unwrap();
        let gamma_ds = solve_bruteforce(&g, ds_params, None).unwrap();
        assert_eq!(gamma_ds.status, SolveStatus::Optimal);

        for (m, ell, r) in [(1u32, 2u32, 2u32), (2, 3, 2)] {
            let (gadget, map) = build_gadget_a(&g, m, ell, r).unwrap();
            let gp = validate_params(Params::new(1, m, ell, r), &gadget).unwrap();
            let gamma_gadget = solve_bruteforce(&gadget, gp, None).unwrap();
            assert_eq!(
                gamma_gadget.size,
                gamma_ds.size + ell as usize,
                "n={n} seed={seed} ({m},{ell},{r})"
            );

            // Threshold transfer in both directions for every k.
            for k in 1..=n {
                assert_eq!(
                    gamma_ds.size <= k,
                    gamma_gadget.size <= k + ell as usize,
                    "k={k}"
                );
            }

            // Forward certificate: feasible and exactly l larger.
            let lifted = forward_cert_a(&map, &gamma_ds.set);
            assert_eq!(lifted.len(), gamma_ds.size + ell as usize);
            assert!(verify(&gadget, gp, &lifted).feasible);

            // Backward certificate: dominating and within the size bound.
            let recovered = backward_cert_a(&map, &g, &gamma_gadget.set).unwrap();
            assert!(recovered.len() <= gamma_gadget.size - ell as usize);
            assert_eq!(recovered.len(), gamma_ds.size);
        }
    }
}

#[test]
fn gadget_b_preserves_the_optimum_size() {
    for seed in 0..8u64 {
        let n = 4 + (seed % 3) as usize;
        let g = generate_random_graph(n, 0.5, seed.wrapping_add(100), true);
        for (d, m, ell) in [(2u32, 1u32, 2u32), (3, 1, 2), (2, 2, 3)] {
            let sp = validate_params(Params::new(1, m, ell, 2), &g).unwrap();
            let gamma_src = solve_bruteforce(&g, sp, None).unwrap();
            assert_eq!(gamma_src.status, SolveStatus::Optimal);

            let (gadget, map) = build_gadget_b(&g, d).unwrap();
            let gp = validate_params(Params::new(d, m, ell, 2), &gadget).unwrap();
            let gamma_gadget = solve_bruteforce(&gadget, gp, Some(gadget.n())).unwrap();
            assert_eq!(
                gamma_gadget.size, gamma_src.size,
                "n={n} seed={seed} d={d} ({m},{ell})"
            );

            let lifted = forward_cert_b(&map, &gamma_src.set);
            assert_eq!(lifted.len(), gamma_src.size);
            assert!(verify(&gadget, gp, &lifted).feasible);

            let recovered = backward_cert_b(&map, &g, &gamma_gadget.set, m, ell).unwrap();
            assert!(recovered.len() <= gamma_gadget.size);
            assert!(verify(&g, sp, &recovered).feasible);
            assert_eq!(recovered.len(), gamma_src.size);
        }
    }
}
