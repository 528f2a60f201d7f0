//! A big-integer sweep of the base-two inequality, summarised per row kind,
//! with every failing row printed.

use std::collections::BTreeMap;

use basewitness::bounds::sweep_b6;
use basewitness::Sign;

fn main() {
    let rows = sweep_b6(Sign::Plus, 6..=24, 2..=9);
    let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &rows {
        let e = tally.entry(r.kind.as_str()).or_default();
        e.0 += 1;
        e.1 += usize::from(r.holds);
        if !r.holds {
            println!(
                "fails: {} n={} q={} {:?}",
                r.kind.as_str(),
                r.n,
                r.q,
                r.decomposition
            );
        }
    }
    for (kind, (total, ok)) in tally {
        println!("{kind}: {ok} of {total} rows hold");
    }
}
