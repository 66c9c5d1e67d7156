//! Suffix array, LCP array and LCP intervals over `u32` symbols.

/// Suffix array by prefix doubling.
pub fn suffix_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    let mut rank: Vec<u64> = s.iter().map(|&c| c as u64).collect();
    let mut tmp = vec![0u64; n];
    let mut k = 1;
    loop {
        let key = |i: usize, rank: &[u64]| -> (u64, u64) {
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        tmp[sa[0]] = 0;
        for w in 1..n {
            let bump = key(sa[w - 1], &rank) < key(sa[w], &rank);
            tmp[sa[w]] = tmp[sa[w - 1]] + u64::from(bump);
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// `lcp[i]` is the longest common prefix of suffixes `sa[i-1]` and
/// `sa[i]`; `lcp[0] = 0`.
pub fn lcp_array(s: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p] = i;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// An LCP interval: suffixes `sa[lb..=rb]` share a prefix of length `lcp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcpInterval {
    pub lcp: usize,
    pub lb: usize,
    pub rb: usize,
}

/// All LCP intervals with `lcp >= min_lcp`, bottom-up.
pub fn lcp_intervals(lcp: &[usize], min_lcp: usize) -> Vec<LcpInterval> {
    let n = lcp.len();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    for i in 1..=n {
        let cur = if i < n { lcp[i] } else { 0 };
        let mut lb = i - 1;
        while cur < stack.last().expect("sentinel stays").0 {
            let (l, b) = stack.pop().expect("non-empty");
            lb = b;
            if l >= min_lcp {
                out.push(LcpInterval { lcp: l, lb, rb: i - 1 });
            }
        }
        if cur > stack.last().expect("sentinel stays").0 {
            stack.push((cur, lb));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_sa(s: &[u32]) -> Vec<usize> {
        let mut v: Vec<usize> = (0..s.len()).collect();
        v.sort_by(|&a, &b| s[a..].cmp(&s[b..]));
        v
    }

    #[test]
    fn matches_naive() {
        let texts: [&[u8]; 5] = [b"banana", b"aaaaaaa", b"abcabcabd", b"", b"mississippi"];
        for t in texts {
            let s: Vec<u32> = t.iter().map(|&b| b as u32).collect();
            let sa = suffix_array(&s);
            assert_eq!(sa, naive_sa(&s));
            let lcp = lcp_array(&s, &sa);
            for i in 1..s.len() {
                let (a, b) = (&s[sa[i - 1]..], &s[sa[i]..]);
                let l = a.iter().zip(b).take_while(|(x, y)| x == y).count();
                assert_eq!(lcp[i], l);
            }
        }
    }

    #[test]
    fn intervals_of_banana() {
        let s: Vec<u32> = b"banana".iter().map(|&b| b as u32).collect();
        let sa = suffix_array(&s);
        let lcp = lcp_array(&s, &sa);
        let mut iv = lcp_intervals(&lcp, 1);
        iv.sort_by_key(|i| (i.lcp, i.lb));
        // "a" x3, "na" x2, "ana" x2
        let got: Vec<(usize, usize)> = iv.iter().map(|i| (i.lcp, i.rb - i.lb + 1)).collect();
        assert_eq!(got, vec![(1, 3), (2, 2), (3, 2)]);
    }
}
