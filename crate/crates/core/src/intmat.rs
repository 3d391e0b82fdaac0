//! Dense integer matrices, Smith normal form and integer linear solving.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, i128::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i128) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let v = a
                        .checked_mul(b)
                        .and_then(|p| p.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow("matrix product"))?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).try_fold(0i128, |acc, j| {
                    self.get(i, j)
                        .checked_mul(v[j])
                        .and_then(|p| p.checked_add(acc))
                        .ok_or(Error::Overflow("matrix-vector product"))
                })
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += k · row[source]`
    fn add_row(&mut self, target: usize, source: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s != 0 {
                let v = s
                    .checked_mul(k)
                    .and_then(|p| p.checked_add(self.get(target, j)))
                    .ok_or(Error::Overflow("row reduction"))?;
                self.set(target, j, v);
            }
        }
        Ok(())
    }

    /// `col[target] += k · col[source]`
    fn add_col(&mut self, target: usize, source: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if s != 0 {
                let v = s
                    .checked_mul(k)
                    .and_then(|p| p.checked_add(self.get(i, target)))
                    .ok_or(Error::Overflow("column reduction"))?;
                self.set(i, target, v);
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// `U · A · V = D` with `D` diagonal, `d₁ | d₂ | …`, all `dᵢ > 0`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<i128>,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith normal form; the unimodular transforms are tracked on request.
pub fn smith_normal_form(a: &IntMatrix, with_transforms: bool) -> Result<Smith> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut u = with_transforms.then(|| IntMatrix::identity(rows));
    let mut v = with_transforms.then(|| IntMatrix::identity(cols));
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero magnitude in the trailing block
        let Some((pi, pj)) = smallest_entry(&m, t) else {
            break;
        };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let x = m.get(i, t);
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(m.get(t, t));
                m.add_row(i, t, -q)?;
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, -q)?;
                }
                if m.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let x = m.get(t, j);
                if x == 0 {
                    continue;
                }
                let q = x.div_euclid(m.get(t, t));
                m.add_col(j, t, -q)?;
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, -q)?;
                }
                if m.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the trailing block by the pivot
                let p = m.get(t, t);
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m.get(i, j) % p != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        m.add_row(t, i, 1)?;
                        if let Some(u) = u.as_mut() {
                            u.add_row(t, i, 1)?;
                        }
                        continue;
                    }
                }
            }
            // move the new smallest entry of row t / column t to the pivot
            let (mut bi, mut bj, mut best) = (t, t, m.get(t, t).abs());
            for i in t + 1..rows {
                let x = m.get(i, t).abs();
                if x != 0 && x < best {
                    (bi, bj, best) = (i, t, x);
                }
            }
            for j in t + 1..cols {
                let x = m.get(t, j).abs();
                if x != 0 && x < best {
                    (bi, bj, best) = (t, j, x);
                }
            }
            m.swap_rows(t, bi);
            m.swap_cols(t, bj);
            if let Some(u) = u.as_mut() {
                u.swap_rows(t, bi);
            }
            if let Some(v) = v.as_mut() {
                v.swap_cols(t, bj);
            }
        }
        if m.get(t, t) < 0 {
            m.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        diagonal.push(m.get(t, t));
    }
    Ok(Smith { diagonal, u, v })
}

fn smallest_entry(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i128)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = m.get(i, j).abs();
            if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                best = Some((i, j, x));
                if x == 1 {
                    return Some((i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn rank(a: &IntMatrix) -> Result<usize> {
    Ok(smith_normal_form(a, false)?.rank())
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i128]) -> Result<Option<Vec<i128>>> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let s = smith_normal_form(a, true)?;
    let u = s.u.as_ref().expect("transforms requested");
    let v = s.v.as_ref().expect("transforms requested");
    let c = u.mul_vec(b)?;
    let mut y = vec![0i128; a.cols];
    for (i, &ci) in c.iter().enumerate() {
        match s.diagonal.get(i) {
            Some(&d) => {
                if ci % d != 0 {
                    return Ok(None);
                }
                y[i] = ci / d;
            }
            None if ci != 0 => return Ok(None),
            None => {}
        }
    }
    Ok(Some(v.mul_vec(&y)?))
}
