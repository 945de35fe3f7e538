use proptest::prelude::*;

use homcat::oracle::dense_slice_dim;
use homcat::presentations::present_cached;
use homcat::webs::{LadderWeb, Slice};

/// Random valid ladder webs: start from colours in {1, 2} and apply splits of
/// thick edges and merges of neighbours whose sum stays at most 4.
fn arb_web() -> impl Strategy<Value = LadderWeb> {
    (prop::collection::vec(1u8..=2, 1..=3), prop::collection::vec((any::<bool>(), 0usize..4, 1u8..4), 0..=4)).prop_map(
        |(bottom, ops)| {
            let mut level = bottom.clone();
            let mut slices = Vec::new();
            for (split, pos, left) in ops {
                let pos = pos % level.len();
                if split && level[pos] >= 2 {
                    let left = 1 + (left - 1) % (level[pos] - 1);
                    let right = level[pos] - left;
                    slices.push(Slice::Split { pos, left, right });
                    level.splice(pos..=pos, [left, right]);
                } else if pos + 1 < level.len() && level[pos] + level[pos + 1] <= 4 {
                    slices.push(Slice::Merge { pos });
                    let s = level[pos] + level[pos + 1];
                    level.splice(pos..=pos + 1, [s]);
                }
            }
            LadderWeb::new(bottom, slices).expect("generator keeps webs valid")
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip(w in arb_web()) {
        prop_assert_eq!(LadderWeb::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn mirror_is_an_involution(w in arb_web()) {
        prop_assert_eq!(w.mirrored().mirrored(), w);
    }

    #[test]
    fn slice_dims_match_dense_oracle(w in arb_web(), q in 0u32..=5) {
        let p = present_cached(&w);
        prop_assert_eq!(p.slice_dim(2 * q), dense_slice_dim(&p, 2 * q));
    }

    #[test]
    fn mirrored_web_has_the_same_slices(w in arb_web(), q in 0u32..=4) {
        let (a, b) = (present_cached(&w), present_cached(&w.mirrored()));
        prop_assert_eq!(a.slice_dim(2 * q), b.slice_dim(2 * q));
    }
}
