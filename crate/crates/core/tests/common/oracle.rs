//! Brute-force reference computations over F_p with plain integer arithmetic.
//! Nothing here calls the library's linear algebra or identity checkers; the
//! only bridge is reading structure constants out of an `Algebra`.

#![allow(dead_code)]

use algact::actions::Variety;
use algact::opspace::OperatorKind;
use algact::Algebra;

/// Structure constants mod p: `t[(i*n + j)*n + k]` is the `e_k` coefficient of `e_i ∘ e_j`.
#[derive(Clone, Debug)]
pub struct Table {
    pub n: usize,
    pub p: u64,
    pub ops: Vec<Vec<u64>>,
}

pub fn residue(s: &algact::Scalar, p: u64) -> u64 {
    let v: i64 = s.to_string().parse().expect("integer residue");
    v.rem_euclid(p as i64) as u64
}

impl Table {
    pub fn from_algebra(a: &Algebra, p: u64) -> Table {
        let n = a.dim();
        let ops = a
            .ops()
            .iter()
            .map(|op| {
                let mut t = vec![0; n * n * n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            t[(i * n + j) * n + k] = residue(op.map.entry(i, j, k), p);
                        }
                    }
                }
                t
            })
            .collect();
        Table { n, p, ops }
    }

    pub fn product(&self) -> usize {
        0
    }

    pub fn bracket(&self) -> usize {
        self.ops.len() - 1
    }

    pub fn op(&self, o: usize, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.n;
        let t = &self.ops[o];
        let mut out = vec![0; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j] % self.p;
                for k in 0..n {
                    out[k] = (out[k] + c * t[(i * n + j) * n + k]) % self.p;
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }
}

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % p).collect()
}

pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + p - y) % p).collect()
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Square matrix, `m[r*n + s]` is the `e_r` coefficient of `M(e_s)`.
pub fn apply(p: u64, n: usize, m: &[u64], v: &[u64]) -> Vec<u64> {
    (0..n).map(|r| (0..n).map(|s| m[r * n + s] * v[s]).sum::<u64>() % p).collect()
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// Whether a table satisfies the identities of a variety.
pub fn in_variety(t: &Table, v: Variety) -> bool {
    let p = t.p;
    let e = |i| t.unit(i);
    let m = t.product();
    let b = t.bracket();
    let assoc = || {
        triples(t.n).all(|(i, j, k)| {
            let l = t.op(m, &t.op(m, &e(i), &e(j)), &e(k));
            let r = t.op(m, &e(i), &t.op(m, &e(j), &e(k)));
            l == r
        })
    };
    match v {
        Variety::Associative => assoc(),
        Variety::Leibniz => triples(t.n).all(|(i, j, k)| {
            let l = t.op(b, &t.op(b, &e(i), &e(j)), &e(k));
            let r = add(p, &t.op(b, &t.op(b, &e(i), &e(k)), &e(j)), &t.op(b, &e(i), &t.op(b, &e(j), &e(k))));
            l == r
        }),
        Variety::Poisson | Variety::CommPoisson => {
            let skew = pairs(t.n).all(|(i, j)| is_zero(&add(p, &t.op(b, &e(i), &e(j)), &t.op(b, &e(j), &e(i)))))
                && (0..t.n).all(|i| is_zero(&t.op(b, &e(i), &e(i))));
            let jacobi = triples(t.n).all(|(i, j, k)| {
                let a = t.op(b, &e(i), &t.op(b, &e(j), &e(k)));
                let c = t.op(b, &e(j), &t.op(b, &e(k), &e(i)));
                let d = t.op(b, &e(k), &t.op(b, &e(i), &e(j)));
                is_zero(&add(p, &add(p, &a, &c), &d))
            });
            let rule = triples(t.n).all(|(i, j, k)| {
                let l = t.op(b, &e(i), &t.op(m, &e(j), &e(k)));
                let r = add(p, &t.op(m, &t.op(b, &e(i), &e(j)), &e(k)), &t.op(m, &e(j), &t.op(b, &e(i), &e(k))));
                l == r
            });
            let comm = v == Variety::Poisson || pairs(t.n).all(|(i, j)| t.op(m, &e(i), &e(j)) == t.op(m, &e(j), &e(i)));
            assoc() && skew && jacobi && rule && comm
        }
    }
}

/// Number of operator tuples of `kind` on `t`, found by trying all of them.
pub fn count_operator_tuples(t: &Table, kind: OperatorKind) -> u64 {
    let n = t.n;
    let p = t.p;
    let comps = kind.components();
    let size = n * n;
    let total = p.pow((comps * size) as u32);
    let m = t.product();
    let b = t.bracket();
    let e: Vec<Vec<u64>> = (0..n).map(|i| t.unit(i)).collect();
    let mut count = 0;
    let mut data = vec![0u64; comps * size];
    for code in 0..total {
        let mut c = code;
        for slot in data.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        let mats: Vec<&[u64]> = (0..comps).map(|k| &data[k * size..(k + 1) * size]).collect();
        let ap = |k: usize, v: &[u64]| apply(p, n, mats[k], v);
        let der = |k: usize, o: usize| {
            pairs(n).all(|(i, j)| {
                let l = ap(k, &t.op(o, &e[i], &e[j]));
                let r = add(p, &t.op(o, &ap(k, &e[i]), &e[j]), &t.op(o, &e[i], &ap(k, &e[j])));
                l == r
            })
        };
        let anti = |k: usize| {
            pairs(n).all(|(i, j)| {
                let l = ap(k, &t.op(b, &e[i], &e[j]));
                let r = sub(p, &t.op(b, &ap(k, &e[i]), &e[j]), &t.op(b, &ap(k, &e[j]), &e[i]));
                l == r
            })
        };
        let left = |k: usize| pairs(n).all(|(i, j)| ap(k, &t.op(m, &e[i], &e[j])) == t.op(m, &ap(k, &e[i]), &e[j]));
        let right = |k: usize| pairs(n).all(|(i, j)| ap(k, &t.op(m, &e[i], &e[j])) == t.op(m, &e[i], &ap(k, &e[j])));
        let link = |f: usize, ff: usize| pairs(n).all(|(i, j)| t.op(m, &e[i], &ap(f, &e[j])) == t.op(m, &ap(ff, &e[i]), &e[j]));
        // f[x,y] = [fx,y] - d(y)·x
        let v1 = |f: usize, d: usize| {
            pairs(n).all(|(i, j)| {
                ap(f, &t.op(b, &e[i], &e[j])) == sub(p, &t.op(b, &ap(f, &e[i]), &e[j]), &t.op(m, &ap(d, &e[j]), &e[i]))
            })
        };
        // F[x,y] = [Fx,y] - x·d(y)
        let v2 = |ff: usize, d: usize| {
            pairs(n).all(|(i, j)| {
                ap(ff, &t.op(b, &e[i], &e[j])) == sub(p, &t.op(b, &ap(ff, &e[i]), &e[j]), &t.op(m, &e[i], &ap(d, &e[j])))
            })
        };
        let bider_link = || pairs(n).all(|(i, j)| t.op(b, &e[i], &ap(0, &e[j])) == t.op(b, &e[i], &ap(1, &e[j])));
        let ok = match kind {
            OperatorKind::Derivations => der(0, b),
            OperatorKind::AntiDerivations => anti(0),
            OperatorKind::Biderivations => der(0, b) && anti(1) && bider_link(),
            OperatorKind::Bimultipliers => left(0) && right(1) && link(0, 1),
            OperatorKind::Multipliers => left(0),
            OperatorKind::PoissonActor => {
                left(0) && right(1) && link(0, 1) && der(2, b) && v1(0, 2) && v2(1, 2) && der(2, m)
            }
            OperatorKind::CommPoissonActor => left(0) && der(1, b) && v1(0, 1) && der(1, m),
        };
        if ok {
            count += 1;
        }
    }
    count
}

/// Semidirect structure constants from raw action tensors, laid out as in the
/// library: acting coordinates first. `l[(p*nx + y)*nx + k]`,
/// `r[(x*nb + q)*nx + k]`, `k_br[(p*nx + y)*nx + k]`.
pub fn semidirect_table(bt: &Table, xt: &Table, l: &[u64], r: &[u64], br: Option<&[u64]>) -> Table {
    let (nb, nx) = (bt.n, xt.n);
    let n = nb + nx;
    let p = bt.p;
    let mut ops = Vec::new();
    for o in 0..bt.ops.len() {
        let bracket_slot = bt.ops.len() == 2 && o == 1;
        let mut t = vec![0; n * n * n];
        for i in 0..nb {
            for j in 0..nb {
                for k in 0..nb {
                    t[(i * n + j) * n + k] = bt.ops[o][(i * nb + j) * nb + k];
                }
            }
        }
        for i in 0..nx {
            for j in 0..nx {
                for k in 0..nx {
                    t[((nb + i) * n + nb + j) * n + nb + k] = xt.ops[o][(i * nx + j) * nx + k];
                }
            }
        }
        for q in 0..nb {
            for y in 0..nx {
                for k in 0..nx {
                    let (left, right) = if bracket_slot {
                        let c = br.expect("bracket action")[(q * nx + y) * nx + k];
                        (c, (p - c) % p)
                    } else {
                        (l[(q * nx + y) * nx + k], r[(y * nb + q) * nx + k])
                    };
                    t[(q * n + nb + y) * n + nb + k] = left;
                    t[((nb + y) * n + q) * n + nb + k] = right;
                }
            }
        }
        ops.push(t);
    }
    Table { n, p, ops }
}

/// Counts assignments of action tensors whose semidirect table lies in the
/// variety. Uses the library's storage order for `comm_poisson` (`l`, then the
/// bracket action, with `r` mirrored from `l`).
pub fn count_valid_actions(bt: &Table, xt: &Table, v: Variety) -> u64 {
    let (nb, nx) = (bt.n, xt.n);
    let p = bt.p;
    let block = nb * nx * nx;
    let blocks = match v {
        Variety::Poisson => 3,
        _ => 2,
    };
    let total = p.pow((blocks * block) as u32);
    let mut data = vec![0u64; blocks * block];
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        for slot in data.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        let l = &data[..block];
        let (r, br): (Vec<u64>, Option<&[u64]>) = match v {
            Variety::Associative | Variety::Leibniz => (data[block..].to_vec(), None),
            Variety::Poisson => (data[block..2 * block].to_vec(), Some(&data[2 * block..])),
            Variety::CommPoisson => {
                let mut r = vec![0; block];
                for q in 0..nb {
                    for y in 0..nx {
                        for k in 0..nx {
                            r[(y * nb + q) * nx + k] = l[(q * nx + y) * nx + k];
                        }
                    }
                }
                (r, Some(&data[block..]))
            }
        };
        if in_variety(&semidirect_table(bt, xt, l, &r, br), v) {
            count += 1;
        }
    }
    count
}
