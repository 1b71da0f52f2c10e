use chipfire_core::bn::gonality_bound;
use chipfire_core::families::ladder::{ladder_divisor, LadderSkeleton};
use chipfire_core::reduce;
use std::time::Instant;

fn main() {
    for genus in 4..=11usize {
        let t1 = Instant::now();
        let sk = LadderSkeleton::new(genus).unwrap();
        let m = sk.skeleton.edge_count();
        let total = 1usize << m;
        // Denser for small genus; >= 200 everywhere.
        let step = (total / if genus <= 7 { 4096 } else { 512 }).max(1);
        let mut count = 0u64;
        let mut fails = 0u64;
        let mut first = None;
        let mut idx = 0usize;
        while idx < total {
            let lengths: Vec<usize> = (0..m).map(|e| 1 + ((idx >> e) & 1)).collect();
            let (g, d) = ladder_divisor(genus, &lengths).unwrap();
            let ok = d.degree() == gonality_bound(genus)
                && reduce::rank_at_least(&g, &d, 1).unwrap().holds();
            if !ok {
                fails += 1;
                if first.is_none() {
                    first = Some(lengths.clone());
                }
            }
            count += 1;
            idx += step;
        }
        println!("genus {genus}: {count} assignments, {fails} failures {first:?} [{:?}]", t1.elapsed());
    }
}
