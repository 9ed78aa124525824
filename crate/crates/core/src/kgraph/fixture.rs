use thiserror::Error;

use super::Skeleton;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

/// One vertex `v` with `sizes[c]` loops of color `c`, named `a0, a1, …` for
/// color 0, `b0, …` for color 1 and so on.
///
/// `squares` has one entry per color pair `i < j`, in lexicographic order. Entry
/// `t` maps the index `x·sizes[j] + y` of the pair (x-th color-`i` loop, y-th
/// color-`j` loop) to the index `y′·sizes[i] + x′` of its factorization
/// (y′-th color-`j` loop, x′-th color-`i` loop).
pub fn single_vertex_fixture(k: usize, sizes: &[usize], squares: &[Vec<usize>]) -> Result<Skeleton, FixtureError> {
    if sizes.len() != k || k == 0 || k > 26 {
        return Err(FixtureError::SizeMismatch(format!("{} sizes for rank {k}", sizes.len())));
    }
    if squares.len() != k * (k - 1) / 2 {
        return Err(FixtureError::SizeMismatch(format!("{} square tables for rank {k}", squares.len())));
    }
    let mut s = Skeleton::new(k);
    let v = s.add_vertex("v");
    let mut first = Vec::with_capacity(k);
    for (c, &n) in sizes.iter().enumerate() {
        first.push(s.edges().len());
        let letter = char::from(b'a' + c as u8);
        for idx in 0..n {
            s.add_edge(format!("{letter}{idx}"), c, v, v);
        }
    }
    let mut tables = squares.iter();
    for i in 0..k {
        for j in i + 1..k {
            let table = tables.next().expect("counted above");
            let (si, sj) = (sizes[i], sizes[j]);
            if table.len() != si * sj {
                return Err(FixtureError::SizeMismatch(format!(
                    "square table for colors {} and {} has {} entries, expected {}",
                    i + 1,
                    j + 1,
                    table.len(),
                    si * sj
                )));
            }
            for (dom, &img) in table.iter().enumerate() {
                if img >= si * sj {
                    return Err(FixtureError::SizeMismatch(format!("square image {img} out of range")));
                }
                let (x, y) = (dom / sj, dom % sj);
                let (y2, x2) = (img / si, img % si);
                s.add_square(first[i] + x, first[j] + y, first[j] + y2, first[i] + x2);
            }
        }
    }
    Ok(s)
}
