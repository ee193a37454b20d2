//! Bron–Kerbosch on `u64` bitsets (`n <= 64`).

/// Every maximal clique of the graph with neighbourhood masks `nb`, as
/// bitmasks. Outer loop in degeneracy order, inner recursion with a
/// max-degree pivot.
pub(crate) fn maximal_cliques(nb: &[u64]) -> Vec<u64> {
    let n = nb.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push(0);
        return out;
    }
    let order = degeneracy_order(nb);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &order {
        let later = (0..n).filter(|&u| pos[u] > pos[v]).fold(0u64, |m, u| m | 1 << u);
        let earlier = (0..n).filter(|&u| pos[u] < pos[v]).fold(0u64, |m, u| m | 1 << u);
        expand(nb, 1 << v, nb[v] & later, nb[v] & earlier, &mut out);
    }
    out
}

fn expand(nb: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let mut pivot = 0;
    let mut best = -1i32;
    let mut px = p | x;
    while px != 0 {
        let u = px.trailing_zeros() as usize;
        px &= px - 1;
        let c = (p & nb[u]).count_ones() as i32;
        if c > best {
            best = c;
            pivot = u;
        }
    }
    let mut cand = p & !nb[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        cand &= !bit;
        expand(nb, r | bit, p & nb[v], x & nb[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Repeatedly removes a vertex of minimum remaining degree (lowest index on
/// ties).
fn degeneracy_order(nb: &[u64]) -> Vec<usize> {
    let n = nb.len();
    let mut alive: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut order = Vec::with_capacity(n);
    while alive != 0 {
        let mut best = usize::MAX;
        let mut bv = 0;
        let mut a = alive;
        while a != 0 {
            let v = a.trailing_zeros() as usize;
            a &= a - 1;
            let d = (nb[v] & alive).count_ones() as usize;
            if d < best {
                best = d;
                bv = v;
            }
        }
        order.push(bv);
        alive &= !(1u64 << bv);
    }
    order
}

pub(crate) fn mask_to_vec(m: u64) -> Vec<usize> {
    (0..64).filter(|&i| m >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_plus_pendant() {
        // 0-1-2 triangle, 2-3 edge
        let nb = [0b0110, 0b0101, 0b1011, 0b0100];
        let mut c = maximal_cliques(&nb);
        c.sort_unstable();
        assert_eq!(c, vec![0b0111, 0b1100]);
    }

    #[test]
    fn edgeless_graph_has_singletons() {
        let mut c = maximal_cliques(&[0, 0, 0]);
        c.sort_unstable();
        assert_eq!(c, vec![1, 2, 4]);
    }
}
