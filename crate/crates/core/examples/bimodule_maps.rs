//! Builds maps between web bimodules from local moves and realizes a
//! composite as a matrix on one slice.

use homcat::presentations::Rewriter;
use homcat::webs::{LadderWeb, Slice};

fn main() -> homcat::Result<()> {
    let s = |pos, left, right| Slice::Split { pos, left, right };
    let m = |pos| Slice::Merge { pos };
    let square = LadderWeb::new(vec![2, 1], vec![s(0, 1, 1), m(1), s(1, 1, 1), m(0)])?;
    let dumbbell = LadderWeb::new(vec![2, 1], vec![m(0), s(0, 2, 1)])?;
    // dumbbell -> square: open two digons, reassociate, unzip
    let g = Rewriter::new(&dumbbell).create(0, 0, 1, 1)?.create(4, 0, 1, 1)?.split_assoc(3)?.merge_assoc(1)?.unzip(2)?.finish_at(&square)?;
    // square -> dumbbell: zip, reassociate, close both digons
    let f = Rewriter::new(&square).zip(2, 0)?.merge_assoc(1)?.split_assoc(3)?.annihilate(4, 0, 1)?.annihilate(0, 0, 1)?.finish_at(&dumbbell)?;
    let fg = g.clone().then(&f)?;
    for d in (0..=8).step_by(2) {
        let mat = fg.realize(d)?;
        println!("q = {d}: {}x{} matrix, identity: {}", mat.nrows(), mat.ncols(), mat == homcat::linalg::QMat::identity(mat.ncols()));
    }
    Ok(())
}
