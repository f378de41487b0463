mod common;

use common::*;
use cptensor::binary::{certify_binary_cp_01, diagonal_bcprank, BinaryCpResult};
use cptensor::dim2::{
    certify_binary_cp_dim2, dominance_necessary_check, strong_symmetric_dim2, BcpCertificate,
};
use cptensor::gramian::verify_cp_decomposition;
use cptensor::hypergraph::{
    adjacency_tensor, certify_unique_maximal, maximal_edges, normal_edge_ratio, property_r_check,
};
use cptensor::oracle::{oracle_binary_cp_search, trace_bound, DEFAULT_NODE_CAP};
use cptensor::{Certificate, CpDecomposition, MultiHypergraph, Rational, Shape, SymmetricTensor};

fn all_tensors(m: usize, n: usize, max_value: i64) -> Vec<SymmetricTensor<Rational>> {
    let len = Shape::new(m, n).unwrap().len();
    let base = (max_value + 1) as u64;
    (0..base.pow(len as u32))
        .map(|mut code| {
            SymmetricTensor::from_fn(m, n, |_| {
                let v = (code % base) as i64;
                code /= base;
                q(v)
            })
            .unwrap()
        })
        .collect()
}

fn oracle_rank(a: &SymmetricTensor<Rational>) -> Option<usize> {
    oracle_binary_cp_search(a, trace_bound(a), DEFAULT_NODE_CAP)
        .unwrap()
        .minimal_k()
}

#[test]
fn oracle_matches_unpruned_enumeration() {
    let mut cases = all_tensors(2, 2, 2);
    cases.extend(all_tensors(3, 2, 2));
    cases.extend(all_tensors(2, 3, 1));
    for a in &cases {
        let k_max = trace_bound(a);
        assert_eq!(oracle_rank(a), naive_binary_rank(a, k_max), "{a}");
    }
}

#[test]
fn oracle_hits_verify() {
    for a in all_tensors(3, 2, 2) {
        if let cptensor::OracleOutcome::Found { factors, .. } =
            oracle_binary_cp_search(&a, trace_bound(&a), DEFAULT_NODE_CAP).unwrap()
        {
            let dec = CpDecomposition::factors(factors).unwrap();
            assert!(verify_cp_decomposition(&a, &dec).unwrap().is_positive());
        }
    }
}

#[test]
fn binary_certifier_agrees_with_oracle() {
    for (m, n) in [(2, 3), (3, 3), (2, 4)] {
        for a in all_tensors(m, n, 1) {
            let cert = certify_binary_cp_01(&a).unwrap();
            let oracle = oracle_rank(&a);
            assert_eq!(cert.is_binary_cp(), oracle.is_some(), "{a}");
            if let BinaryCpResult::BinaryCp { u, .. } = cert {
                // Disjoint all-ones blocks are the only decomposition, so the
                // block count is also minimal.
                assert_eq!(Some(u.ncols()), oracle);
            }
        }
    }
}

#[test]
fn dim2_closed_form_matches_oracle() {
    for m in 2..=5 {
        for n1 in 0..=4 {
            for n2 in 0..=4 {
                for n12 in 0..=4 {
                    let a = strong_symmetric_dim2(m, q(n1), q(n2), q(n12)).unwrap();
                    let cert = certify_binary_cp_dim2(&a).unwrap();
                    let oracle = oracle_rank(&a);
                    assert_eq!(cert.bcprank(), oracle, "m={m} ({n1},{n2},{n12})");
                    match cert {
                        BcpCertificate::BinaryCp {
                            decomposition,
                            bcprank,
                        } => {
                            assert_eq!(bcprank as i64, n1 + n2 - n12);
                            assert_eq!(decomposition.len(), bcprank);
                            assert!(verify_cp_decomposition(&a, &decomposition)
                                .unwrap()
                                .is_positive());
                            assert_eq!(dominance_necessary_check(&a), Certificate::Passed);
                        }
                        BcpCertificate::NotBinaryCp { .. } => {
                            assert!(dominance_necessary_check(&a).is_negative());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn diagonal_rank_matches_oracle() {
    for m in 2..=3 {
        for n in 1..=3 {
            for a in all_tensors(1, n, 3) {
                let d = SymmetricTensor::diagonal(m, a.values()).unwrap();
                let (rank, dec) = diagonal_bcprank(&d).unwrap();
                assert_eq!(Some(rank), oracle_rank(&d));
                assert!(verify_cp_decomposition(&d, &dec).unwrap().is_positive());
            }
        }
    }
}

#[test]
fn unique_maximal_agrees_with_block_certificate() {
    for a in all_tensors(2, 3, 1).into_iter().chain(all_tensors(3, 3, 1)) {
        let g = cptensor::tensor_to_multihypergraph(&a).unwrap();
        let cert = certify_unique_maximal::<Rational>(&g);
        if let Certificate::Positive(CpDecomposition::Factors(f)) = cert {
            let BinaryCpResult::BinaryCp { u, .. } = certify_binary_cp_01(&a).unwrap() else {
                panic!("unique maximal certificate without block certificate: {a}");
            };
            assert_eq!(u.columns(), f.as_slice());
        }
    }
}

#[test]
fn disjoint_complete_blocks() {
    // Property R with maximal edges over {1,2}, {3} and {4,5,6}.
    let blocks: [&[usize]; 3] = [&[1, 2], &[3], &[4, 5, 6]];
    let mut edges = Vec::new();
    for block in blocks {
        for idx in Shape::new(3, block.len()).unwrap().indices() {
            edges.push(
                idx.entries()
                    .iter()
                    .map(|&i| block[i - 1])
                    .collect::<Vec<_>>(),
            );
        }
    }
    let g = MultiHypergraph::new(3, 7, edges).unwrap();
    assert!(property_r_check(&g).holds());
    let mut bases: Vec<Vec<usize>> = maximal_edges(&g).iter().map(|e| e.base_set()).collect();
    bases.dedup();
    assert_eq!(bases, vec![vec![1, 2], vec![3], vec![4, 5, 6]]);
    let a = adjacency_tensor::<Rational>(&g).unwrap();
    let BinaryCpResult::BinaryCp { u, block_sizes } = certify_binary_cp_01(&a).unwrap() else {
        panic!("disjoint complete blocks are {{0,1}}-CP");
    };
    assert_eq!(block_sizes, vec![2, 1, 3]);
    for (col, base) in u.columns().iter().zip(&bases) {
        let support: Vec<usize> = (1..=7).filter(|&i| col[i - 1] == q(1)).collect();
        assert_eq!(&support, base);
    }
}

#[test]
fn normal_edge_ratio_tends_to_one_sixth() {
    let sixth = Rational::new(1.into(), 6.into());
    let hundredth = Rational::new(1.into(), 100.into());
    let mut previous = q(0);
    for n in [200, 300, 500, 1000] {
        let r = normal_edge_ratio(3, n);
        assert!(r < sixth && r > previous, "monotone from below at n = {n}");
        assert!(sixth.clone() - &r < hundredth, "absolute gap at n = {n}");
        previous = r;
    }
    // Relative to 1/6 the gap is about 3/n: 1.5% at n = 200, under 1% from n = 300.
    let relative = |n| (sixth.clone() - normal_edge_ratio(3, n)) / &sixth;
    assert!(relative(200) > hundredth);
    assert!(relative(300) < hundredth);
}
