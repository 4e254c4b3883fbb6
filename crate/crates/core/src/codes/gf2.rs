use super::ParityCheckMatrix;

/// Reduced row echelon form and its pivot columns.
pub fn rref(h: &ParityCheckMatrix) -> (ParityCheckMatrix, Vec<usize>) {
    let mut m = h.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| m.get(r, c)) else {
            continue;
        };
        if p != row {
            for w in 0..m.words_per_row() {
                let a = m.row_words(p)[w];
                let b = m.row_words(row)[w];
                m.row_words_mut(p)[w] = b;
                m.row_words_mut(row)[w] = a;
            }
        }
        let pivot_row = m.row_words(row).to_vec();
        for r in 0..m.rows() {
            if r != row && m.get(r, c) {
                m.row_words_mut(r).iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(c);
        row += 1;
    }
    (m, pivots)
}

pub fn gf2_rank(h: &ParityCheckMatrix) -> usize {
    rref(h).1.len()
}

/// Nullspace basis as the rows of a matrix: one vector per free column, in
/// increasing column order, with a 1 in that column and pivot entries read
/// from the reduced form.
pub fn nullspace_basis(h: &ParityCheckMatrix) -> ParityCheckMatrix {
    let (r, pivots) = rref(h);
    let mut is_pivot = vec![false; h.cols()];
    pivots.iter().for_each(|&c| is_pivot[c] = true);
    let free: Vec<usize> = (0..h.cols()).filter(|&c| !is_pivot[c]).collect();
    let mut basis = ParityCheckMatrix::zeros(free.len(), h.cols());
    for (i, &f) in free.iter().enumerate() {
        basis.set(i, f, true);
        for (pr, &pc) in pivots.iter().enumerate() {
            if r.get(pr, f) {
                basis.set(i, pc, true);
            }
        }
    }
    basis
}
