//! Reference data for the 2022 World Cup groups and an independent
//! rank-one oracle shared by the integration tests.
#![allow(dead_code)]

use rrsvd::linalg::DenseMatrix;

pub struct GroupRef {
    pub letter: char,
    pub teams: [&'static str; 4],
    /// Performance matrix as printed, 4 decimals.
    pub matrix: [[f64; 4]; 4],
    pub explained: f64,
    pub u1: [f64; 4],
    pub v1: [f64; 4],
    pub u2: [f64; 4],
    pub v2: [f64; 4],
    pub offense: [&'static str; 4],
    pub defense: [&'static str; 4],
}

pub const GROUPS: [GroupRef; 8] = [
    GroupRef {
        letter: 'A',
        teams: ["Netherlands", "Senegal", "Ecuador", "Qatar"],
        matrix: [
            [1.0, 2.0, 1.0, 2.0],
            [0.0, 1.5, 2.0, 3.0],
            [1.0, 1.0, 1.6667, 2.0],
            [0.0, 1.0, 0.0, 1.3333],
        ],
        explained: 0.9302,
        u1: [0.5200, 0.6534, 0.4909, 0.2486],
        v1: [0.1728, 0.4716, 0.4520, 0.7372],
        u2: [0.6962, -0.5597, -0.1970, 0.4039],
        v2: [0.4202, 0.6395, -0.6326, -0.1197],
        offense: ["Senegal", "Netherlands", "Ecuador", "Qatar"],
        defense: ["Netherlands", "Ecuador", "Senegal", "Qatar"],
    },
    GroupRef {
        letter: 'B',
        teams: ["England", "USA", "Iran", "Wales"],
        matrix: [
            [1.8333, 0.0, 6.0, 3.0],
            [0.0, 0.5, 1.0, 1.0],
            [2.0, 0.0, 1.8333, 2.0],
            [0.0, 1.0, 0.0, 1.1667],
        ],
        explained: 0.9266,
        u1: [0.8968, 0.1698, 0.4013, 0.0761],
        v1: [0.3169, 0.0209, 0.8142, 0.4859],
        u2: [-0.3400, 0.2428, 0.5151, 0.7485],
        v2: [0.2382, 0.5092, -0.4992, 0.6593],
        offense: ["England", "Iran", "USA", "Wales"],
        defense: ["USA", "England", "Wales", "Iran"],
    },
    GroupRef {
        letter: 'C',
        teams: ["Argentina", "Poland", "Mexico", "Saudi Arabia"],
        matrix: [
            [1.1667, 2.0, 2.0, 1.0],
            [0.0, 0.6667, 0.0, 2.0],
            [0.0, 0.0, 0.8333, 2.0],
            [2.0, 0.0, 1.0, 1.3333],
        ],
        explained: 0.7144,
        u1: [0.6652, 0.3629, 0.4038, 0.5127],
        v1: [0.4158, 0.3629, 0.5030, 0.6652],
        u2: [0.5771, -0.5899, -0.5547, 0.1057],
        v2: [0.4186, 0.3600, 0.3774, -0.7435],
        offense: ["Argentina", "Saudi Arabia", "Mexico", "Poland"],
        defense: ["Poland", "Argentina", "Mexico", "Saudi Arabia"],
    },
    GroupRef {
        letter: 'D',
        teams: ["France", "Australia", "Tunisia", "Denmark"],
        matrix: [
            [1.5, 4.0, 0.0, 2.0],
            [1.0, 1.1667, 1.0, 1.0],
            [1.0, 0.0, 0.3333, 0.0],
            [1.0, 0.0, 0.0, 0.6667],
        ],
        explained: 0.8918,
        u1: [0.9191, 0.3619, 0.0801, 0.1338],
        v1: [0.3832, 0.8036, 0.0762, 0.4489],
        u2: [0.3303, -0.5100, -0.5812, -0.5412],
        v2: [-0.7402, 0.4728, -0.4581, -0.1368],
        offense: ["France", "Australia", "Denmark", "Tunisia"],
        defense: ["Tunisia", "France", "Denmark", "Australia"],
    },
    GroupRef {
        letter: 'E',
        teams: ["Japan", "Spain", "Germany", "Costa Rica"],
        matrix: [
            [1.1667, 2.0, 2.0, 0.0],
            [1.0, 2.0, 1.0, 7.0],
            [1.0, 1.0, 1.8333, 4.0],
            [1.0, 0.0, 2.0, 2.3333],
        ],
        explained: 0.8782,
        u1: [0.1428, 0.7958, 0.4989, 0.3122],
        v1: [0.1930, 0.2586, 0.2851, 0.9026],
        u2: [0.8832, -0.3527, 0.1359, 0.2777],
        v2: [0.3603, 0.3952, 0.7323, -0.4216],
        offense: ["Spain", "Germany", "Costa Rica", "Japan"],
        defense: ["Japan", "Spain", "Germany", "Costa Rica"],
    },
    GroupRef {
        letter: 'F',
        teams: ["Morocco", "Croatia", "Belgium", "Canada"],
        matrix: [
            [0.8333, 0.0, 2.0, 2.0],
            [0.0, 0.8333, 0.0, 4.0],
            [0.0, 0.0, 0.5, 1.0],
            [1.0, 1.0, 0.0, 1.5],
        ],
        explained: 0.8334,
        u1: [0.4799, 0.7784, 0.2072, 0.3476],
        v1: [0.1473, 0.1964, 0.2096, 0.9465],
        u2: [0.8467, -0.4965, 0.1338, -0.1369],
        v2: [0.2895, -0.2803, 0.8962, -0.1854],
        offense: ["Croatia", "Morocco", "Canada", "Belgium"],
        defense: ["Morocco", "Croatia", "Belgium", "Canada"],
    },
    GroupRef {
        letter: 'G',
        teams: ["Brazil", "Switzerland", "Cameroon", "Serbia"],
        matrix: [
            [0.6667, 1.0, 0.0, 2.0],
            [0.0, 1.1667, 1.0, 3.0],
            [1.0, 0.0, 1.3333, 3.0],
            [0.0, 2.0, 3.0, 2.1667],
        ],
        explained: 0.8565,
        u1: [0.3203, 0.5207, 0.5007, 0.6129],
        v1: [0.1135, 0.3420, 0.4808, 0.7994],
        u2: [0.3974, 0.2011, 0.4696, -0.7623],
        v2: [0.3352, -0.4073, -0.6661, 0.5273],
        offense: ["Serbia", "Switzerland", "Cameroon", "Brazil"],
        defense: ["Brazil", "Switzerland", "Cameroon", "Serbia"],
    },
    GroupRef {
        letter: 'H',
        teams: ["Portugal", "South Korea", "Uruguay", "Ghana"],
        matrix: [
            [1.1667, 1.0, 2.0, 3.0],
            [2.0, 1.3333, 0.0, 2.0],
            [0.0, 0.0, 0.6667, 2.0],
            [2.0, 3.0, 0.0, 2.0],
        ],
        explained: 0.8309,
        u1: [0.5752, 0.4809, 0.2508, 0.6124],
        v1: [0.4593, 0.4908, 0.2118, 0.7094],
        u2: [0.5954, -0.2229, 0.4993, -0.5887],
        v2: [-0.3590, -0.5676, 0.5892, 0.4492],
        offense: ["Ghana", "Portugal", "South Korea", "Uruguay"],
        defense: ["Uruguay", "Portugal", "South Korea", "Ghana"],
    },
];

pub fn group(letter: char) -> &'static GroupRef {
    GROUPS
        .iter()
        .find(|g| g.letter == letter)
        .expect("known group")
}

pub fn printed_matrix(g: &GroupRef) -> DenseMatrix {
    DenseMatrix::from_rows(&g.matrix).unwrap()
}

/// Group C singular values and full singular vectors as printed.
pub const C_SIGMA: [f64; 4] = [4.3328, 2.1135, 1.5973, 0.6971];
pub const C_U: [[f64; 4]; 4] = [
    [0.6652, 0.3629, 0.4038, 0.5127],
    [0.5771, -0.5899, -0.5547, 0.1057],
    [-0.471010, -0.282612, -0.030440, 0.835077],
    [0.051229, -0.663640, 0.726862, -0.169204],
];
pub const C_V: [[f64; 4]; 4] = [
    [0.4158, 0.3629, 0.5030, 0.6652],
    [0.4186, 0.3600, 0.3774, -0.7435],
    [0.701562, -0.707705, -0.082831, 0.010201],
    [-0.399693, -0.487699, 0.773091, -0.068748],
];
pub const C_A1: [[f64; 4]; 4] = [
    [1.1984, 1.0459, 1.4497, 1.9172],
    [0.6538, 0.5706, 0.7909, 1.0459],
    [0.7275, 0.6349, 0.8800, 1.1638],
    [0.9237, 0.8062, 1.1174, 1.4777],
];
pub const C_RESIDUAL: [[f64; 4]; 4] = [
    [-0.0317, 0.9541, 0.5503, -0.9172],
    [-0.6538, 0.0961, -0.7909, 0.9541],
    [-0.7275, -0.6349, -0.0467, 0.8362],
    [1.0763, -0.8062, -0.1174, -0.1444],
];
pub const C_P: [[f64; 4]; 4] = [
    [2.9772, 0.5151, 0.5359, 0.9721],
    [0.5151, 1.7407, 1.0040, 0.3757],
    [0.5359, 1.0040, 1.7266, 0.6467],
    [0.9721, 0.3757, 0.6467, 2.2964],
];
pub const C_Q: [[f64; 4]; 4] = [
    [2.0168, 0.3150, 0.9318, 0.5711],
    [0.3150, 1.8103, 0.9089, 0.4919],
    [0.9318, 0.9089, 1.8250, 0.8183],
    [0.5711, 0.4919, 0.8183, 3.0887],
];

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Largest entrywise difference between `(u, v)` and `(ref_u, ref_v)`,
/// taking the better of the two simultaneous signs.
pub fn pair_diff_up_to_sign(u: &[f64], v: &[f64], ref_u: &[f64], ref_v: &[f64]) -> f64 {
    let same = max_abs_diff(u, ref_u).max(max_abs_diff(v, ref_v));
    let nu: Vec<f64> = u.iter().map(|x| -x).collect();
    let nv: Vec<f64> = v.iter().map(|x| -x).collect();
    let flipped = max_abs_diff(&nu, ref_u).max(max_abs_diff(&nv, ref_v));
    same.min(flipped)
}

/// Dominant singular triplet by power iteration on `AᵀA`, independent of
/// the Jacobi code. Returns `(σ, u, v)`; `u` is zero when `σ` is zero.
pub fn power_iteration(a: &DenseMatrix) -> (f64, Vec<f64>, Vec<f64>) {
    let (m, n) = (a.rows(), a.cols());
    let at = a.transpose();
    // Deterministic start with no special alignment.
    let mut v: Vec<f64> = (0..n)
        .map(|j| 1.0 + 0.1 * ((j * 7 + 3) % 11) as f64)
        .collect();
    normalize(&mut v);
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let av = a.mul_vec(&v).unwrap();
        let mut w = at.mul_vec(&av).unwrap();
        let norm = norm2(&w);
        if norm == 0.0 {
            return (0.0, vec![0.0; m], v);
        }
        w.iter_mut().for_each(|x| *x /= norm);
        let change = v
            .iter()
            .zip(&w)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        v = w;
        if change < 1e-15 && (norm - lambda).abs() <= 1e-15 * norm {
            break;
        }
        lambda = norm;
    }
    let av = a.mul_vec(&v).unwrap();
    let sigma = norm2(&av);
    let u = if sigma > 0.0 {
        av.iter().map(|x| x / sigma).collect()
    } else {
        vec![0.0; m]
    };
    (sigma, u, v)
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn normalize(x: &mut [f64]) {
    let n = norm2(x);
    x.iter_mut().for_each(|v| *v /= n);
}

pub fn outer(sigma: f64, u: &[f64], v: &[f64]) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = u
        .iter()
        .map(|ui| v.iter().map(|vj| sigma * ui * vj).collect())
        .collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

pub fn gram_defect(cols: &[Vec<f64>]) -> f64 {
    let k = cols.len();
    let mut sum = 0.0;
    for i in 0..k {
        for j in 0..k {
            let dot: f64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a * b).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            sum += (dot - target).powi(2);
        }
    }
    sum.sqrt()
}
