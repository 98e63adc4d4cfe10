//! Cell counts of K(H,1) complexes and the bounds derived from them.

use thompson_sigma::complexes::{cells_for_subgroup_f, d_bound, hnn_cells, stack_cells, CellVector};
use thompson_sigma::lattices::{hnf, SubgroupLattice};

fn main() -> thompson_sigma::Result<()> {
    let b = hnn_cells(&hnn_cells(&CellVector::thompson_f()));
    println!("B = {b}, H = {}", stack_cells(&b, &CellVector::all_ones()));

    let lattices = [
        SubgroupLattice::diagonal(&[2, 1])?,
        hnf(2, &[vec![1, 1], vec![0, 2]])?,
        SubgroupLattice::diagonal(&[2, 2])?,
        SubgroupLattice::diagonal(&[6, 10])?,
    ];
    for l in &lattices {
        let (cells, tag) = cells_for_subgroup_f(l)?;
        let report = d_bound(l)?;
        println!(
            "{l:<8} {:<6} {:?} d <= {} def in {:?}",
            tag.as_str(),
            cells.expand(5)?,
            report.d_upper,
            report.deficiency.unwrap()
        );
    }

    for rows in [vec![vec![4, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![vec![1, 0, 0], vec![0, 3, 0], vec![0, 0, 1]]] {
        let l = hnf(3, &rows)?;
        println!("n = 3, {l}: d <= {}", d_bound(&l)?.d_upper);
    }
    Ok(())
}
