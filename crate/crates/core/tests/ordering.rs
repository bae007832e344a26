use divchain::{arrange, feasible, OrderingError};
use proptest::prelude::*;

proptest! {
    #[test]
    fn arrangement_is_valid(sizes in prop::collection::vec(0usize..6, 1..7)) {
        let mut next = 0u32;
        let blocks: Vec<Vec<u32>> = sizes.iter().map(|&s| {
            let b = (next..next + s as u32).collect();
            next += s as u32;
            b
        }).collect();
        let total: usize = sizes.iter().sum();
        match arrange(&blocks) {
            Ok(seq) => {
                prop_assert!(feasible(&sizes));
                let mut sorted = seq.clone();
                sorted.sort_unstable();
                prop_assert_eq!(sorted, (0..total as u32).collect::<Vec<_>>());
                let block_of = |v: u32| blocks.iter().position(|b| b.contains(&v)).unwrap();
                prop_assert!(seq.windows(2).all(|w| block_of(w[0]) != block_of(w[1])));
            }
            Err(OrderingError::Empty) => prop_assert_eq!(total, 0),
            Err(OrderingError::Infeasible { size, .. }) => {
                prop_assert!(!feasible(&sizes));
                prop_assert!(2 * size > total + 1);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn strings() {
    let seq = arrange(&[vec!["a", "b", "c"], vec!["d", "e"], vec!["f"]]).unwrap();
    assert_eq!(seq.len(), 6);
}
