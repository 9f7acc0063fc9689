//! Test-side oracles that share no code with the library.
#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::ToPrimitive;
use polyside::segments2d::{HalfPlane2, Point2, SegmentSet2};

/// Homogeneous point `(x/d, y/d)` with `d > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct H {
    pub x: i128,
    pub y: i128,
    pub d: i128,
}

impl H {
    pub fn int(x: i128, y: i128) -> Self {
        H { x, y, d: 1 }
    }

    pub fn same(&self, o: &H) -> bool {
        self.x * o.d == o.x * self.d && self.y * o.d == o.y * self.d
    }
}

pub fn int_of(r: &BigRational) -> i128 {
    assert!(r.is_integer(), "generator produced a non-integer {r}");
    r.numer().to_i128().expect("fits in i128")
}

pub fn int_point(p: &Point2<BigRational>) -> H {
    H::int(int_of(&p.x), int_of(&p.y))
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("oracle overflow")
}

/// Sign of `det [[ux uy ud] [vx vy vd] [wx wy wd]]` scaled back by the
/// positive denominators, i.e. the orientation of `u v w`.
pub fn orient(u: &H, v: &H, w: &H) -> i32 {
    let t = |a: i128, b: i128, c: i128| mul(mul(a, b), c);
    let det = t(u.x, v.y, w.d) - t(u.x, v.d, w.y) - t(u.y, v.x, w.d)
        + t(u.y, v.d, w.x)
        + t(u.d, v.x, w.y)
        - t(u.d, v.y, w.x);
    det.signum() as i32
}

/// Line `a·x + b·y + c = 0` through two integer points.
#[derive(Debug, Clone, Copy)]
pub struct L {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

pub fn line(p: &H, q: &H) -> L {
    assert!(p.d == 1 && q.d == 1);
    let a = p.y - q.y;
    let b = q.x - p.x;
    L {
        a,
        b,
        c: -(a * p.x + b * p.y),
    }
}

pub fn meet(l: &L, m: &L) -> Option<H> {
    let d = mul(l.a, m.b) - mul(l.b, m.a);
    if d == 0 {
        return None;
    }
    let x = mul(l.b, m.c) - mul(l.c, m.b);
    let y = mul(l.c, m.a) - mul(l.a, m.c);
    Some(if d < 0 {
        H {
            x: -x,
            y: -y,
            d: -d,
        }
    } else {
        H { x, y, d }
    })
}

/// Sign of `a·x + b·y + c` at `p` for an integer half-plane.
pub fn halfplane_sign(h: &HalfPlane2<BigRational>, p: &H) -> i32 {
    let (a, b, c) = (int_of(&h.line.a), int_of(&h.line.b), int_of(&h.line.c));
    (mul(a, p.x) + mul(b, p.y) + mul(c, p.d)).signum() as i32
}

/// Integer view of a set in the library's clockwise order.
pub struct IntSet {
    pub segs: Vec<(H, H)>,
}

impl IntSet {
    pub fn of(set: &SegmentSet2<BigRational>) -> Self {
        IntSet {
            segs: set
                .segments
                .iter()
                .map(|s| (int_point(&s.a), int_point(&s.b)))
                .collect(),
        }
    }

    pub fn endpoints(&self) -> impl Iterator<Item = &H> {
        self.segs.iter().flat_map(|(a, b)| [a, b])
    }

    /// Every endpoint is on the closed right of every directed segment, and
    /// the walk `a₀ b₀ a₁ b₁ …` never turns left.
    pub fn is_clockwise_convex(&self) -> bool {
        let right_of_all = self
            .segs
            .iter()
            .all(|(a, b)| self.endpoints().all(|e| orient(a, b, e) <= 0));
        let walk: Vec<H> = self.endpoints().copied().collect();
        let n = walk.len();
        let turns = (0..n).all(|k| orient(&walk[k], &walk[(k + 1) % n], &walk[(k + 2) % n]) <= 0);
        right_of_all && turns
    }

    pub fn si_point(&self, i: usize, j: usize) -> H {
        let (a, b) = self.segs[i];
        let (c, d) = self.segs[j];
        meet(&line(&a, &b), &line(&c, &d)).expect("no parallel segments")
    }

    /// Brute force: the csi-point of `(i, i+1)` together with every endpoint
    /// lies in one closed half-plane of the hull edge between the two
    /// segments, and strictly off that edge.
    pub fn flopped(&self, i: usize) -> bool {
        let j = (i + 1) % self.segs.len();
        let from = self.segs[i].1;
        let to = self.segs[j].0;
        if from.same(&to) {
            return false;
        }
        let c = self.si_point(i, j);
        let s = orient(&from, &to, &c);
        s != 0 && self.endpoints().all(|e| orient(&from, &to, e) != -s)
    }

    pub fn flopped_indices(&self) -> Vec<usize> {
        (0..self.segs.len()).filter(|&i| self.flopped(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Loc {
    Inside,
    Boundary,
    Outside,
}

pub fn locate(t: [&H; 3], p: &H) -> Loc {
    let o = orient(t[0], t[1], t[2]);
    assert_ne!(o, 0, "degenerate triangle");
    let s = [
        orient(t[0], t[1], p) * o,
        orient(t[1], t[2], p) * o,
        orient(t[2], t[0], p) * o,
    ];
    if s.iter().any(|&v| v < 0) {
        Loc::Outside
    } else if s.iter().all(|&v| v > 0) {
        Loc::Inside
    } else {
        Loc::Boundary
    }
}

/// Determinant by LU decomposition with partial pivoting.
pub fn det_lu<const N: usize>(mut m: [[f64; N]; N]) -> f64 {
    let mut det = 1.0;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty");
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (x, p) in row.iter_mut().zip(pivot_row).skip(col) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Homogeneous form of a rational point, over the common denominator.
pub fn rat_point(p: &Point2<BigRational>) -> H {
    let wide = |r: &BigRational| -> (i128, i128) {
        (
            r.numer().to_i128().expect("fits"),
            r.denom().to_i128().expect("fits"),
        )
    };
    let ((xn, xd), (yn, yd)) = (wide(&p.x), wide(&p.y));
    H {
        x: mul(xn, yd),
        y: mul(yn, xd),
        d: mul(xd, yd),
    }
}
