//! Generic exact cover: pick a subset of the candidate rows so that every
//! column is covered exactly once. The solver is a dancing-links structure
//! with reversible cover/uncover and fail-first column selection; forced
//! rows are pre-covered before the search starts.

use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("row {row} repeats column {col}")]
    DuplicateColumn { row: usize, col: usize },
    #[error("row {row} names column {col}, but there are only {cols} columns")]
    ColumnOutOfRange { row: usize, col: usize, cols: usize },
    #[error("forced row index {index} out of range ({rows} rows)")]
    ForcedRowOutOfRange { index: usize, rows: usize },
    #[error("forced rows {a} and {b} overlap: the instance is unsatisfiable")]
    ForcedRowsOverlap { a: usize, b: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn parse_err(line: usize, msg: impl Into<String>) -> CoverError {
    CoverError::Parse {
        line,
        msg: msg.into(),
    }
}

/// An exact-cover instance: `num_columns` mandatory points and candidate
/// subsets over them (0-based column indices, stored sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoverInstance {
    num_columns: usize,
    rows: Vec<Vec<usize>>,
    forced_rows: Vec<usize>,
}

impl ExactCoverInstance {
    pub fn new(num_columns: usize, rows: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        Self::with_forced(num_columns, rows, Vec::new())
    }

    pub fn with_forced(
        num_columns: usize,
        rows: Vec<Vec<usize>>,
        mut forced_rows: Vec<usize>,
    ) -> Result<Self, CoverError> {
        let mut sorted_rows = Vec::with_capacity(rows.len());
        for (idx, mut row) in rows.into_iter().enumerate() {
            if row.is_empty() {
                return Err(CoverError::EmptyRow { row: idx });
            }
            row.sort_unstable();
            if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
                return Err(CoverError::DuplicateColumn {
                    row: idx,
                    col: w[0],
                });
            }
            if let Some(&col) = row.last() {
                if col >= num_columns {
                    return Err(CoverError::ColumnOutOfRange {
                        row: idx,
                        col,
                        cols: num_columns,
                    });
                }
            }
            sorted_rows.push(row);
        }
        forced_rows.sort_unstable();
        forced_rows.dedup();
        for &f in &forced_rows {
            if f >= sorted_rows.len() {
                return Err(CoverError::ForcedRowOutOfRange {
                    index: f,
                    rows: sorted_rows.len(),
                });
            }
        }
        let mut used = vec![usize::MAX; num_columns];
        for &f in &forced_rows {
            for &col in &sorted_rows[f] {
                if used[col] != usize::MAX {
                    return Err(CoverError::ForcedRowsOverlap { a: used[col], b: f });
                }
                used[col] = f;
            }
        }
        Ok(ExactCoverInstance {
            num_columns,
            rows: sorted_rows,
            forced_rows,
        })
    }

    pub fn num_columns(&self) -> usize {
        self.num_columns
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn forced_rows(&self) -> &[usize] {
        &self.forced_rows
    }

    /// Parse the instance file format: a `cols=<int>` header, one row per
    /// line as space-separated 1-based column indices, and trailing
    /// `force <row-index>` lines (0-based). `#` comments and blank lines
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self, CoverError> {
        let mut cols: Option<usize> = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        let mut forced: Vec<usize> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("cols=") {
                if cols.is_some() {
                    return Err(parse_err(line_no, "duplicate cols= header"));
                }
                cols = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad column count {v:?}")))?,
                );
                continue;
            }
            let ncols = cols.ok_or_else(|| parse_err(line_no, "expected cols=<int> header first"))?;
            if let Some(v) = line.strip_prefix("force ") {
                let f: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad row index {v:?}")))?;
                forced.push(f);
                continue;
            }
            let mut row = Vec::new();
            for token in line.split_whitespace() {
                let col: usize = token
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad column index {token:?}")))?;
                if col == 0 || col > ncols {
                    return Err(parse_err(
                        line_no,
                        format!("column {col} out of range 1..={ncols}"),
                    ));
                }
                row.push(col - 1);
            }
            if row.is_empty() {
                return Err(parse_err(line_no, "empty row"));
            }
            rows.push(row);
        }
        let cols = cols.ok_or_else(|| parse_err(0, "missing cols=<int> header"))?;
        Self::with_forced(cols, rows, forced).map_err(|e| match e {
            CoverError::Parse { .. } => e,
            other => parse_err(0, other.to_string()),
        })
    }
}

impl fmt::Display for ExactCoverInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cols={}", self.num_columns)?;
        for row in &self.rows {
            let mut first = true;
            for col in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", col + 1)?;
                first = false;
            }
            writeln!(f)?;
        }
        for forced in &self.forced_rows {
            writeln!(f, "force {forced}")?;
        }
        Ok(())
    }
}

/// Row indices (sorted, including forced rows) that exactly cover the
/// columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoverSolution {
    rows: Vec<usize>,
}

impl CoverSolution {
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }
}

/// Independent check of the partition invariant: the selected rows are
/// pairwise disjoint, cover every column, and include every forced row.
/// Used to vet solver output; shares no state with the solver.
pub fn verify_cover(inst: &ExactCoverInstance, rows: &[usize]) -> bool {
    let mut covered = vec![false; inst.num_columns()];
    for &r in rows {
        let Some(row) = inst.rows().get(r) else {
            return false;
        };
        for &col in row {
            if covered[col] {
                return false;
            }
            covered[col] = true;
        }
    }
    covered.iter().all(|&c| c) && inst.forced_rows().iter().all(|f| rows.contains(f))
}

/// First solution in the solver's deterministic order, if any.
pub fn solve_exists(inst: &ExactCoverInstance) -> Option<CoverSolution> {
    let mut found = None;
    run(inst, &mut |sol| {
        found = Some(sol);
        ControlFlow::Break(())
    });
    let sol = found?;
    assert!(
        verify_cover(inst, sol.rows()),
        "internal error: solver produced a non-partition"
    );
    Some(sol)
}

/// Up to `cap` solutions; `complete` reports whether the search space was
/// exhausted.
pub fn enumerate(inst: &ExactCoverInstance, cap: usize) -> (Vec<CoverSolution>, bool) {
    let mut out = Vec::new();
    if cap == 0 {
        return (out, false);
    }
    let complete = run(inst, &mut |sol| {
        assert!(
            verify_cover(inst, sol.rows()),
            "internal error: solver produced a non-partition"
        );
        out.push(sol);
        if out.len() >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    (out, complete)
}

/// Exact number of solutions.
pub fn count(inst: &ExactCoverInstance) -> u64 {
    let mut total = 0u64;
    run(inst, &mut |_| {
        total += 1;
        ControlFlow::Continue(())
    });
    total
}

/// Run the dancing-links search; returns true iff the space was exhausted.
fn run(inst: &ExactCoverInstance, emit: &mut dyn FnMut(CoverSolution) -> ControlFlow<()>) -> bool {
    let mut dlx = Dlx::build(inst);
    // Pre-cover the forced rows; construction guarantees disjointness, so
    // each of their columns is still alive here.
    for &f in inst.forced_rows() {
        for &col in &inst.rows()[f] {
            dlx.cover(col as u32 + 1);
        }
    }
    let mut picked: Vec<u32> = Vec::new();
    let status = dlx.search(inst, &mut picked, emit);
    for &f in inst.forced_rows().iter().rev() {
        for &col in inst.rows()[f].iter().rev() {
            dlx.uncover(col as u32 + 1);
        }
    }
    status.is_continue()
}

/// Dancing-links arena. Node 0 is the head, nodes 1..=C the column headers,
/// the rest row items in input order.
struct Dlx {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    /// Column header of each node (self for headers).
    col: Vec<u32>,
    /// Row id of each body node.
    row: Vec<u32>,
    /// Live item count per column, indexed by header.
    count: Vec<u32>,
}

impl Dlx {
    fn build(inst: &ExactCoverInstance) -> Dlx {
        let ncols = inst.num_columns();
        let nnodes = 1 + ncols + inst.rows().iter().map(|r| r.len()).sum::<usize>();
        let mut dlx = Dlx {
            left: vec![0; nnodes],
            right: vec![0; nnodes],
            up: vec![0; nnodes],
            down: vec![0; nnodes],
            col: vec![0; nnodes],
            row: vec![u32::MAX; nnodes],
            count: vec![0; 1 + ncols],
        };
        for i in 0..=ncols as u32 {
            dlx.left[i as usize] = if i == 0 { ncols as u32 } else { i - 1 };
            dlx.right[i as usize] = if i == ncols as u32 { 0 } else { i + 1 };
            dlx.up[i as usize] = i;
            dlx.down[i as usize] = i;
            dlx.col[i as usize] = i;
        }
        let mut next = 1 + ncols as u32;
        for (row_id, row) in inst.rows().iter().enumerate() {
            let first = next;
            for &c in row {
                let header = c as u32 + 1;
                let node = next;
                next += 1;
                dlx.col[node as usize] = header;
                dlx.row[node as usize] = row_id as u32;
                // bottom of the column
                let bottom = dlx.up[header as usize];
                dlx.up[node as usize] = bottom;
                dlx.down[node as usize] = header;
                dlx.down[bottom as usize] = node;
                dlx.up[header as usize] = node;
                dlx.count[header as usize] += 1;
                // row ring
                if node == first {
                    dlx.left[node as usize] = node;
                    dlx.right[node as usize] = node;
                } else {
                    let prev = node - 1;
                    let head = first;
                    dlx.left[node as usize] = prev;
                    dlx.right[node as usize] = head;
                    dlx.right[prev as usize] = node;
                    dlx.left[head as usize] = node;
                }
            }
        }
        dlx
    }

    fn cover(&mut self, header: u32) {
        let h = header as usize;
        self.right[self.left[h] as usize] = self.right[h];
        self.left[self.right[h] as usize] = self.left[h];
        let mut i = self.down[h];
        while i != header {
            let mut j = self.right[i as usize];
            while j != i {
                let ju = self.up[j as usize];
                let jd = self.down[j as usize];
                self.down[ju as usize] = jd;
                self.up[jd as usize] = ju;
                self.count[self.col[j as usize] as usize] -= 1;
                j = self.right[j as usize];
            }
            i = self.down[i as usize];
        }
    }

    fn uncover(&mut self, header: u32) {
        let h = header as usize;
        let mut i = self.up[h];
        while i != header {
            let mut j = self.left[i as usize];
            while j != i {
                self.count[self.col[j as usize] as usize] += 1;
                self.down[self.up[j as usize] as usize] = j;
                self.up[self.down[j as usize] as usize] = j;
                j = self.left[j as usize];
            }
            i = self.up[i as usize];
        }
        self.right[self.left[h] as usize] = header;
        self.left[self.right[h] as usize] = header;
    }

    fn search(
        &mut self,
        inst: &ExactCoverInstance,
        picked: &mut Vec<u32>,
        emit: &mut dyn FnMut(CoverSolution) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.right[0] == 0 {
            let mut rows: Vec<usize> = picked.iter().map(|&r| r as usize).collect();
            rows.extend_from_slice(inst.forced_rows());
            rows.sort_unstable();
            return emit(CoverSolution { rows });
        }

        // Fail-first: fewest live candidates, lowest header on ties.
        let mut chosen = 0u32;
        let mut best = u32::MAX;
        let mut h = self.right[0];
        while h != 0 {
            let c = self.count[h as usize];
            if c < best {
                best = c;
                chosen = h;
                if c == 0 {
                    break;
                }
            }
            h = self.right[h as usize];
        }
        if best == 0 {
            return ControlFlow::Continue(());
        }

        self.cover(chosen);
        let mut i = self.down[chosen as usize];
        let mut status = ControlFlow::Continue(());
        while i != chosen {
            picked.push(self.row[i as usize]);
            let mut j = self.right[i as usize];
            while j != i {
                self.cover(self.col[j as usize]);
                j = self.right[j as usize];
            }
            status = self.search(inst, picked, emit);
            let mut j = self.left[i as usize];
            while j != i {
                self.uncover(self.col[j as usize]);
                j = self.left[j as usize];
            }
            picked.pop();
            if status.is_break() {
                break;
            }
            i = self.down[i as usize];
        }
        self.uncover(chosen);
        status
    }
}
