//! Standard normal tail area and percent point, after the classic applied
//! statistics routines (AS 66 and the Beasley-Springer percent point).

/// Tail area of the standard normal curve: from `x` to infinity when
/// `upper`, otherwise from minus infinity to `x`.
pub(crate) fn alnorm(x: f64, upper: bool) -> f64 {
    const LTONE: f64 = 7.0;
    const UTZERO: f64 = 38.0;
    const CON: f64 = 1.28;

    let mut up = upper;
    let mut z = x;
    if z < 0.0 {
        up = !up;
        z = -z;
    }
    if !(z <= LTONE || (up && z <= UTZERO)) {
        return if up { 0.0 } else { 1.0 };
    }
    let y = 0.5 * z * z;
    let temp = if z <= CON {
        0.5 - z
            * (0.398942280444
                - 0.399903438504 * y
                    / (y + 5.75885480458
                        - 29.8213557808 / (y + 2.62433121679 + 48.6959930692 / (y + 5.92885724438))))
    } else {
        0.398942280385 * (-y).exp()
            / (z - 3.8052e-8
                + 1.00000615302
                    / (z + 3.98064794e-4
                        + 1.98615381364
                            / (z - 0.151679116635
                                + 5.29330324926
                                    / (z + 4.8385912808
                                        - 15.1508972451
                                            / (z + 0.742380924027
                                                + 30.789933034 / (z + 3.99019417011))))))
    };
    if up {
        temp
    } else {
        1.0 - temp
    }
}

/// Percent point (inverse CDF) of the standard normal distribution.
pub(crate) fn ppnd(p: f64) -> f64 {
    const SPLIT: f64 = 0.42;
    let q = p - 0.5;
    if q.abs() <= SPLIT {
        let r = q * q;
        return q * (((-25.44106049637 * r + 41.39119773534) * r - 18.61500062529) * r
            + 2.50662823884)
            / ((((3.13082909833 * r - 21.06224101826) * r + 23.08336743743) * r - 8.47351093090)
                * r
                + 1.0);
    }
    let mut r = p;
    if q > 0.0 {
        r = 1.0 - p;
    }
    if r <= 0.0 {
        return 0.0;
    }
    r = (-r.ln()).sqrt();
    let t = (((2.32121276858 * r + 4.85014127135) * r - 2.29796479134) * r - 2.78718931138)
        / ((1.63706781897 * r + 3.54388924762) * r + 1.0);
    if q < 0.0 {
        -t
    } else {
        t
    }
}

/// Two-sided p-value for a standard normal deviate.
pub(crate) fn two_sided_p(z: f64) -> f64 {
    (2.0 * alnorm(z.abs(), true)).min(1.0)
}
