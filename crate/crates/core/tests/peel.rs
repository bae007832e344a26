use divchain::{connect_astar, factorize, in_a_star, peel_chain, PeelError};

fn star_elements(x: u64, y: u64) -> Vec<u64> {
    ((x as f64).sqrt() as u64..=x / 2)
        .filter(|&n| in_a_star(n, x, y))
        .collect()
}

#[test]
fn connections_stay_in_a_star() {
    let (x, y) = (200_000u64, 13u64);
    let elems = star_elements(x, y);
    let by_prime = |p: u64| -> Vec<u64> {
        elems
            .iter()
            .copied()
            .filter(|&n| factorize(n).unwrap().largest() == p)
            .step_by(97)
            .take(4)
            .collect()
    };
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut connected = 0;
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            for &a in &by_prime(p) {
                for &b in &by_prime(q) {
                    match connect_astar(a, b, x, y) {
                        Ok(c) => {
                            assert!(c.verify().is_ok());
                            assert_eq!((c.first(), c.last()), (Some(a), Some(b)));
                            assert!(c.entries().iter().all(|&n| in_a_star(n, x, y)));
                            connected += 1;
                        }
                        Err(PeelError::Collision(v)) => {
                            panic!("collision at {v} joining {a} and {b}")
                        }
                        Err(e) => panic!("{a} -> {b}: {e}"),
                    }
                }
            }
        }
    }
    assert!(connected > 100);
}

#[test]
fn peel_ends_at_a_power_of_q() {
    let (x, y) = (1_000_000u64, 31u64);
    for a in star_elements(x, y).into_iter().step_by(1013) {
        let f = factorize(a).unwrap();
        if f.largest() > 3 && f.least() != Some(2) {
            let c = peel_chain(a, 3, x, y).unwrap();
            let last = c.last().unwrap();
            assert_eq!(factorize(last).unwrap().largest(), 3);
        }
        if f.largest() > 2 {
            let c = peel_chain(a, 2, x, y).unwrap();
            assert!(c.last().unwrap().is_power_of_two());
        }
    }
}

#[test]
fn equal_primes_rejected() {
    assert!(matches!(
        connect_astar(448, 896, 59049, 7),
        Err(PeelError::PrimeOrder { .. })
    ));
}
