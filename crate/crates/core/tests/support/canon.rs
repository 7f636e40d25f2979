//! Canonical forms of graphs on at most 11 vertices by individualization
//! and refinement, taking the largest adjacency code over all leaves.

const MAX: usize = 11;

#[derive(Clone, Copy)]
struct Partition {
    cells: [u16; MAX],
    len: usize,
}

fn refine(rows: &[u16], p: &mut Partition) {
    let mut s = 0;
    while s < p.len {
        let splitter = p.cells[s];
        let mut changed = false;
        let mut i = 0;
        while i < p.len {
            let cell = p.cells[i];
            if cell.count_ones() < 2 {
                i += 1;
                continue;
            }
            let mut by_count = [0u16; MAX + 1];
            let mut m = cell;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                by_count[(rows[v] & splitter).count_ones() as usize] |= 1 << v;
                m &= m - 1;
            }
            let groups: Vec<u16> = by_count.iter().copied().filter(|&g| g != 0).collect();
            if groups.len() == 1 {
                i += 1;
                continue;
            }
            let k = groups.len();
            p.cells.copy_within(i + 1..p.len, i + k);
            p.cells[i..i + k].copy_from_slice(&groups);
            p.len += k - 1;
            i += k;
            changed = true;
        }
        s = if changed { 0 } else { s + 1 };
    }
}

fn leaf_code(rows: &[u16], p: &Partition) -> u64 {
    let n = rows.len();
    let order: Vec<usize> = p.cells[..n].iter().map(|c| c.trailing_zeros() as usize).collect();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = (code << 1) | u64::from(rows[order[i]] & (1 << order[j]) != 0);
        }
    }
    code
}

fn search(rows: &[u16], p: Partition, best: &mut Option<(u64, Partition)>) {
    let Some(t) = (0..p.len).find(|&i| p.cells[i].count_ones() > 1) else {
        let code = leaf_code(rows, &p);
        if best.is_none_or(|(b, _)| code > b) {
            *best = Some((code, p));
        }
        return;
    };
    let cell = p.cells[t];
    let mut m = cell;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let mut child = p;
        child.cells.copy_within(t + 1..p.len, t + 2);
        child.cells[t] = 1 << v;
        child.cells[t + 1] = cell & !(1 << v);
        child.len += 1;
        refine(rows, &mut child);
        search(rows, child, best);
    }
}

/// Isomorphism-invariant code and the graph relabelled into canonical order.
pub fn canonical_form(rows: &[u16]) -> (u64, Vec<u16>) {
    let n = rows.len();
    assert!(n <= MAX);
    if n == 0 {
        return (0, Vec::new());
    }
    let mut p = Partition {
        cells: [0; MAX],
        len: 1,
    };
    p.cells[0] = ((1u32 << n) - 1) as u16;
    refine(rows, &mut p);
    let mut best = None;
    search(rows, p, &mut best);
    let (code, leaf) = best.expect("at least one leaf");
    let order: Vec<usize> = leaf.cells[..n].iter().map(|c| c.trailing_zeros() as usize).collect();
    let mut pos = [0usize; MAX];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let canon = order
        .iter()
        .map(|&v| {
            let mut r = 0u16;
            let mut m = rows[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                r |= 1 << pos[w];
                m &= m - 1;
            }
            r
        })
        .collect();
    (code | ((n as u64) << 56), canon)
}
