//! r₀ against an independent character computation: the least r for which
//! V_{qλ}^{⊗r} has an invariant, q the least scaling putting rqλ in the root
//! lattice. In type A saturation makes this exact.

use num_integer::gcd;
use orbitope::charalg::{invariant_dim_tensor_power, DEFAULT_CHARACTER_CAP as CAP};
use orbitope::invariants::{r0, R0Options, Status};
use orbitope::{RootSystem, Series};

fn oracle(n: usize, j: usize) -> usize {
    let rs = RootSystem::new(Series::A, n - 1).unwrap();
    let w = rs.fundamental(j - 1);
    (1..=n)
        .find(|&r| {
            let q = n / gcd(n, r * j);
            invariant_dim_tensor_power(&rs, &w, r, q as u32, CAP).unwrap() > 0
        })
        .unwrap()
}

#[test]
fn fundamental_weights_up_to_su5() {
    for n in 2..=5 {
        for j in 1..n {
            let rs = RootSystem::new(Series::A, n - 1).unwrap();
            let res = r0(&rs, &rs.fundamental(j - 1), &R0Options::default()).unwrap();
            assert_eq!(res.value, Some(oracle(n, j)), "SU{n} ϖ{j}");
            assert_eq!(res.status, Status::Exact);
        }
    }
}

#[test]
fn sums_of_fundamental_weights_in_a3() {
    let rs = RootSystem::new(Series::A, 3).unwrap();
    for c in [[1, 1, 0], [2, 0, 0], [1, 0, 2], [0, 1, 1], [2, 1, 0]] {
        let w = orbitope::Weight::from_ints(&c);
        let res = r0(&rs, &w, &R0Options::default()).unwrap();
        // Root lattice condition for A3: c1 + 2c2 + 3c3 ≡ 0 mod 4.
        let level = (c[0] + 2 * c[1] + 3 * c[2]) as usize;
        let want = (1..=4)
            .find(|&r| {
                let q = 4 / gcd(4, r * level);
                invariant_dim_tensor_power(&rs, &w, r, q as u32, CAP).unwrap() > 0
            })
            .unwrap();
        assert_eq!(res.value, Some(want), "{c:?}");
    }
}
