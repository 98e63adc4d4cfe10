//! Finiteness type of subgroups between G' and G.

use thompson_sigma::charspace::kernel_finiteness;

fn main() -> thompson_sigma::Result<()> {
    let cases: [(&str, usize, Vec<Vec<i64>>); 4] = [
        ("Ker chi_2, n = 2", 2, vec![vec![1, -1]]),
        ("G'<x_1>, n = 2", 2, vec![vec![0, 1]]),
        ("G'<x_0 x_1>, n = 2", 2, vec![vec![1, 1]]),
        ("G'<x_0, x_2>, n = 3", 3, vec![vec![1, 0, 0], vec![0, 0, 1]]),
    ];
    for (name, n, rows) in cases {
        let report = kernel_finiteness(n, &rows, 16, false)?;
        println!("{name:<22} {}", report.to_json());
    }
    Ok(())
}
