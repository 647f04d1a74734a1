use std::f64::consts::FRAC_PI_2;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{expr, unsupported, BaseKind, ConnectionChoice, EinsteinProblem, FamilyTag, SolutionFamily};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub problem: EinsteinProblem,
    pub families: Vec<SolutionFamily>,
    pub notes: Vec<String>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.problem;
        let show = |v: &Option<BigRational>| v.as_ref().map_or("symbolic".to_string(), |q| q.to_string());
        writeln!(
            f,
            "problem\tbase={}\tconnection={}\tl={}\tlambda0={}\tc0={}",
            p.base,
            p.connection,
            p.l,
            show(&p.lambda0),
            show(&p.c0)
        )?;
        writeln!(f, "families\t{}", self.families.len())?;
        for fam in &self.families {
            write!(f, "{fam}")?;
        }
        for n in &self.notes {
            writeln!(f, "note\t{n}")?;
        }
        Ok(())
    }
}

fn rat(q: &BigRational) -> String {
    if q.is_integer() {
        format!("({})", q.numer())
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn family(tag: FamilyTag, case: &str, h: &str, lambda: &str, kappa: &str) -> SolutionFamily {
    let h = expr(h).canonicalize();
    let mut constants = Vec::new();
    h.for_each_leaf(&mut |leaf| {
        let s = leaf.to_string();
        if matches!(s.as_str(), "c" | "c1" | "c2") && !constants.contains(&s) {
            constants.push(s);
        }
    });
    constants.sort();
    SolutionFamily {
        tag,
        case: case.into(),
        constants,
        h,
        representative: None,
        lambda: expr(lambda).canonicalize(),
        fiber_constant: expr(kappa).canonicalize(),
        side_conditions: Vec::new(),
        assumptions: Vec::new(),
    }
}

impl SolutionFamily {
    fn side(mut self, s: &str) -> Self {
        self.side_conditions.push(s.into());
        self
    }

    fn assume(mut self, name: &str, lo: f64, hi: f64) -> Self {
        self.assumptions.push((name.into(), lo, hi));
        self
    }
}

/// Explicit warping function with `hh'' - h'² = target`, and the sampling
/// interval for `t` it needs.
fn implicit_representative(target: Option<&BigRational>) -> (String, Option<(f64, f64)>) {
    match target {
        None => ("c1*exp(t) + c2*exp(-t)".into(), None),
        Some(v) if v.is_zero() => ("c1*exp(t)".into(), None),
        Some(v) if v.is_positive() => (format!("c1*exp(t) + {}/(4*c1)*exp(-t)", rat(v)), None),
        Some(v) => (format!("sqrt({})*cos(t)", rat(&-v)), Some((0.1, 1.4))),
    }
}

fn with_representative(mut fam: SolutionFamily, target: Option<&BigRational>) -> SolutionFamily {
    let (rep, domain) = implicit_representative(target);
    let rep = expr(&rep);
    rep.for_each_leaf(&mut |leaf| {
        let s = leaf.to_string();
        if matches!(s.as_str(), "c1" | "c2") && !fam.constants.contains(&s) {
            fam.constants.push(s);
        }
    });
    fam.representative = Some(rep);
    if let Some((lo, hi)) = domain {
        fam = fam.assume("t", lo, hi);
    }
    fam
}

fn matches(known: &Option<BigRational>, value: &BigRational) -> bool {
    known.as_ref().is_none_or(|k| k == value)
}

/// Solution families of the Einstein condition for `problem`, following
/// the case analysis of each classification as stated. An empty list means
/// the case analysis excludes every warping function.
pub fn classify(problem: &EinsteinProblem) -> Result<Classification> {
    let mut out = Classification {
        problem: problem.clone(),
        families: Vec::new(),
        notes: Vec::new(),
    };
    match (problem.base, problem.connection) {
        (BaseKind::R10, ConnectionChoice::SemiSymmetric) => r10_ssnm(problem, &mut out),
        (BaseKind::R12, ConnectionChoice::LeviCivita) => r12_lc(problem, &mut out),
        (BaseKind::R12, ConnectionChoice::SemiSymmetric) => r12_ssnm(problem, &mut out)?,
        (base, conn) => return Err(unsupported(base, conn)),
    }
    Ok(out)
}

fn r10_ssnm(p: &EinsteinProblem, out: &mut Classification) {
    let l = p.l;
    out.notes.push("families written f(t) in the classification are read as the warping function h(t)".into());
    match l {
        1 => {
            let kappa = "h(t)*h'(t) - h(t)^2";
            let side = "fiber Einstein constant c0 = h h' - h^2";
            let (lam0, symbolic) = match &p.lambda0 {
                Some(v) => (rat(v), false),
                None => ("lambda0".to_string(), true),
            };
            let lambda = format!("-{lam0}");
            let below = p.lambda0.as_ref().is_none_or(|v| v < &int(1));
            let at = matches(&p.lambda0, &int(1));
            let above = p.lambda0.as_ref().is_none_or(|v| v > &int(1));
            if below {
                let h = format!("c1*exp(sqrt(1 - {lam0})*t) + c2*exp(-sqrt(1 - {lam0})*t)");
                let mut f = family(FamilyTag::Exponential, "lambda0 < 1", &h, &lambda, kappa).side(side);
                if symbolic {
                    f = f.side("lambda0 < 1").assume("lambda0", -1.0, 0.5);
                }
                out.families.push(f);
            }
            if at {
                out.families.push(family(FamilyTag::Linear, "lambda0 = 1", "c1 + c2*t", "-1", kappa).side(side));
            }
            if above {
                let h = format!("c1*cos(sqrt({lam0} - 1)*t) + c2*sin(sqrt({lam0} - 1)*t)");
                let mut f = family(FamilyTag::Trigonometric, "lambda0 > 1", &h, &lambda, kappa).side(side);
                let b = match &p.lambda0 {
                    Some(v) => (to_f64(v) - 1.0).sqrt(),
                    None => {
                        f = f.side("lambda0 > 1").assume("lambda0", 1.5, 3.0);
                        3f64.sqrt()
                    }
                };
                out.families.push(f.assume("t", 0.05 * FRAC_PI_2 / b, 0.7 * FRAC_PI_2 / b));
            }
        }
        0 => {
            if !matches(&p.lambda0, &int(0)) {
                out.notes.push("lambda0 = 0 is forced when q - n = 0".into());
                return;
            }
            let f = family(FamilyTag::None, "q = n", "h(t)", "0", "h'(t)^2 - h(t)*h''(t)")
                .side("lambda0 = 0")
                .side("c0 + h h'' - h'^2 = 0");
            out.families.push(with_representative(f, p.c0.as_ref().map(|c| -c).as_ref()));
        }
        _ => {
            let c0_zero = matches(&p.c0, &int(0));
            if matches(&p.lambda0, &int(0)) && c0_zero {
                out.families.push(
                    family(FamilyTag::Exponential, "lambda0 = lambdaN = 0", "c1*exp(t)", "0", "0")
                        .side("lambda0 = 0")
                        .side("lambdaN = 0"),
                );
            }
            if matches(&p.lambda0, &int(l)) {
                let lr = int(l);
                let (ln, assume) = match &p.c0 {
                    Some(c) => (Some(-c), None),
                    None => (None, Some(if l > 0 { (0.5, 2.0) } else { (-2.0, -0.5) })),
                };
                match &ln {
                    Some(v) if !(v / &lr).is_positive() => {
                        out.notes.push("constant family needs lambdaN/(q - n) > 0".into());
                    }
                    _ => {
                        let ln_text = ln.as_ref().map_or("lambdaN".to_string(), rat);
                        let h = format!("sqrt({ln_text}/{})", rat(&lr));
                        let mut f = family(
                            FamilyTag::Constant,
                            "lambda0 = q - n",
                            &h,
                            &format!("-{}", rat(&lr)),
                            &format!("-{ln_text}"),
                        )
                        .side(&format!("lambda0 = {l}"))
                        .side("lambdaN/(q - n) > 0");
                        if let Some((lo, hi)) = assume {
                            f = f.assume("lambdaN", lo, hi);
                        }
                        out.families.push(f);
                    }
                }
                out.notes.push(
                    "constant family uses h = sqrt(lambdaN/(q - n)); the alternative value lambdaN/(q - n) does not solve the reduced fiber equation"
                        .into(),
                );
            }
        }
    }
}

fn r12_lc(p: &EinsteinProblem, out: &mut Classification) {
    let l = p.l;
    if !matches(&p.lambda0, &int(0)) {
        out.notes.push("lambda = 0 is forced".into());
        return;
    }
    match l {
        0 => {
            let f = family(FamilyTag::None, "q = n", "h(t)", "0", "h'(t)^2 - h(t)*h''(t)")
                .side("lambda = 0")
                .side("h h'' - h'^2 = c0")
                .side("fiber Einstein constant -c0");
            out.families.push(with_representative(f, p.c0.as_ref()));
        }
        1 => out.families.push(
            family(FamilyTag::Linear, "q - n - 1 = 0", "c1*t + c2", "0", "0")
                .side("lambda = 0")
                .side("fiber Einstein constant 0"),
        ),
        _ => {
            let lm1 = int(l - 1);
            let (c0, assume) = match &p.c0 {
                Some(c) => {
                    if (c / &lm1).is_negative() {
                        out.notes.push("c0/(q - n - 1) >= 0 fails".into());
                        return;
                    }
                    (rat(c), None)
                }
                None => ("c0".to_string(), Some(if l > 1 { (0.5, 2.0) } else { (-2.0, -0.5) })),
            };
            let slope = format!("sqrt({c0}/{})", rat(&lm1));
            let signs: &[&str] = if p.c0.as_ref().is_some_and(Zero::is_zero) { &["+"] } else { &["+", "-"] };
            for s in signs {
                let mut f = family(
                    FamilyTag::Linear,
                    &format!("q - n - 1 != 0 ({s})"),
                    &format!("{s}{slope}*t + c2"),
                    "0",
                    &format!("-{c0}"),
                )
                .side("lambda = 0")
                .side("c0/(q - n - 1) >= 0")
                .side("fiber Einstein constant -c0");
                if let Some((lo, hi)) = assume {
                    f = f.assume("c0", lo, hi);
                }
                if *s == "-" {
                    f = f.assume("t", 0.05, 0.3).assume("c2", 1.0, 2.0);
                }
                out.families.push(f);
            }
        }
    }
}

fn r12_ssnm(p: &EinsteinProblem, out: &mut Classification) -> Result<()> {
    if p.l == 0 {
        return Err(Error::Degenerate("k = 1 + 2/(q - n) is undefined at q - n = 0".into()));
    }
    out.notes.push("exponent of the characteristic solution read as k = 1 + 2/(q - n)".into());
    out.notes.push("coefficient 416k^4 in the elimination system read as 16k^4".into());
    if p.l != -2 {
        out.notes.push("q - n + 2 != 0".into());
        return Ok(());
    }
    if !matches(&p.lambda0, &int(0)) || !matches(&p.c0, &int(0)) {
        out.notes.push("lambda = 0 and c0 = 0 are forced".into());
        return Ok(());
    }
    out.families.push(
        family(FamilyTag::Constant, "q - n + 2 = 0", "c", "0", "0")
            .side("lambda = 0")
            .side("c0 = 0"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(base: BaseKind, conn: ConnectionChoice, l: i64) -> EinsteinProblem {
        EinsteinProblem::new(base, conn, l)
    }

    #[test]
    fn lambda0_selects_one_case() {
        let c = classify(&p(BaseKind::R10, ConnectionChoice::SemiSymmetric, 1).with_lambda0(2)).unwrap();
        assert_eq!(c.families.len(), 1);
        assert_eq!(c.families[0].tag, FamilyTag::Trigonometric);
        assert_eq!(
            c.families[0].h.to_ratfunc(),
            expr("c1*cos(t) + c2*sin(t)").to_ratfunc()
        );
    }

    #[test]
    fn unsupported_and_degenerate() {
        assert!(matches!(
            classify(&p(BaseKind::R10, ConnectionChoice::LeviCivita, 1)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            classify(&p(BaseKind::R12, ConnectionChoice::SemiSymmetric, 0)),
            Err(Error::Degenerate(_))
        ));
    }
}
