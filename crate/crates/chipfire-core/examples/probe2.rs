use chipfire_core::families::insert::insert_cycle_divisor;
use chipfire_core::families::multipartite::multipartite_divisor;
use chipfire_core::reduce;

fn main() {
    let mut lengths = vec![1usize; 9];
    lengths[4] = 2;
    let (g, d) = multipartite_divisor(&[3, 3], &lengths).unwrap();
    let v0 = g.vertex_by_name("e4.1").unwrap();
    let mut fails = 0;
    for mask in 0..4usize {
        let cl = [1 + (mask & 1), 1 + ((mask >> 1) & 1)];
        match insert_cycle_divisor(&g, v0, &d, &cl) {
            Ok((g2, d2)) => {
                let ok = g2.genus().unwrap() == 5
                    && d2.degree() <= 4
                    && reduce::rank_at_least(&g2, &d2, 1).unwrap().holds();
                if !ok {
                    fails += 1;
                }
            }
            Err(e) => {
                println!("cycle {cl:?}: {e}");
                fails += 1;
            }
        }
    }
    println!("cycle insertion: {fails} failures of 4");
}
