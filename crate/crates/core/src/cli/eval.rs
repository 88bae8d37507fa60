//! Dispatch of parsed scenarios to the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::report::{Fields, Out};
use super::scenario::*;
use crate::adelic::{radius_norm, RadiusAssignment, RadiusEntry};
use crate::capacity::{
    adjusted_exponent, curve_pullback_identity_check, finite_morphism_capacity_lower_bound,
    polydisk_sectional_capacity, pullback_sectional_capacity, theorem_compare_check,
    MorphismDescriptor, PullbackCandidate,
};
use crate::error::{Error, ErrorClass, Result};
use crate::fekete::{enumerate_witnesses, find_scaling, verify_point};
use crate::game::{game_value_with, shifted_value, GameMatrix};
use crate::green::{
    equilibrium_weights_with, is_negative_definite_with, sectional_capacity_from_weights_with,
    validate, Equilibrium, GreensMatrix, Permutation, WeightVector,
};
use crate::oracle::{
    char_poly_by_interpolation, game_value_2x2, grid_game_bounds, grid_max_quadratic,
    polydisk_capacity_exact, pullback_capacity_exact, GridSpec, GRID_DIMENSION_CAP,
};
use crate::skolem::{
    char_poly, cayley_hamilton_check, is_injective, leading_unit_check, linear_form_images,
    monomial_exponents, ExponentSet, MultiplicationMatrix, SparsePolynomial,
};
use crate::tolerance::Tolerances;

/// Results and, when requested, the oracle block for one scenario.
pub fn evaluate(s: &Scenario, with_oracle: bool) -> Result<(Fields, Option<Fields>)> {
    let tol = &s.tolerances;
    let mut r = Fields::new();
    let mut o = Fields::new();
    match &s.payload {
        Payload::Green(p) => green(p, tol, &mut r, with_oracle.then_some(&mut o))?,
        Payload::Game(p) => game(p, tol, &mut r, with_oracle.then_some(&mut o))?,
        Payload::Polydisk(p) => {
            let radii = radii(p.d, &p.radii)?;
            r.put("norm", radius_norm(&radii))
                .put("S_gamma", polydisk_sectional_capacity(p.d, &radii)?);
            if with_oracle {
                let exact = polydisk_capacity_exact(p.d, &radii)?;
                o.put("S_gamma_exact", exact);
                o.put("relative_error", relative_error(num(&r, "S_gamma"), exact));
            }
        }
        Payload::Pullback(p) => pullback(p, tol, &mut r, with_oracle.then_some(&mut o))?,
        Payload::FmBound(p) => {
            let (candidates, contained) = candidates(&p.candidates)?;
            let capacities = candidates
                .iter()
                .map(pullback_sectional_capacity)
                .collect::<Result<Vec<_>>>()?;
            r.put("lower_bound", lower_bound(&candidates, &contained)?)
                .put("contained", contained.iter().filter(|&&c| c).count())
                .put("capacities", capacities);
        }
        Payload::Compare(p) => {
            let set = PullbackCandidate::new(
                MorphismDescriptor::new(p.d, p.degree, p.multiplicity)?,
                radii(p.d, &p.radii)?,
            )?;
            let sectional = pullback_sectional_capacity(&set)?;
            let (candidates, contained) = candidates(&p.candidates)?;
            let fm = lower_bound(&candidates, &contained)?;
            r.put("sectional", sectional)
                .put("fm_lower_bound", fm)
                .put("holds", theorem_compare_check(fm, sectional, tol.relative))
                .put("equal", (fm - sectional).abs() <= tol.relative * sectional);
        }
        Payload::Witness(p) => {
            let radii = radii(p.d, &p.radii)?;
            let scaling = find_scaling(&radii)?;
            let scaled: Vec<Out> = scaling
                .places()
                .into_iter()
                .map(|place| {
                    let mut f = Fields::new();
                    f.put("place", place.to_string())
                        .put("value", scaling.scaled_radius(place));
                    Out::Obj(f)
                })
                .collect();
            let points = enumerate_witnesses(&scaling, p.count);
            let verified = points
                .iter()
                .all(|pt| verify_point(pt, &radii, tol.archimedean));
            let listed: Vec<Out> = points
                .iter()
                .map(|pt| {
                    Out::List(
                        pt.coordinates
                            .iter()
                            .map(|z| Out::from(vec![z.order, z.index]))
                            .collect(),
                    )
                })
                .collect();
            r.put("alpha", scaling.alpha().to_string())
                .put("n", scaling.n())
                .put("scaled_radii", Out::List(scaled))
                .put("coordinate_form", "zeta(order, index) * alpha^(-1/n)")
                .put("points", Out::List(listed))
                .put("verified", verified);
        }
        Payload::Exponents(p) => {
            let sigma = ExponentSet::new(p.points.clone())?;
            let m = monomial_exponents(&sigma);
            let images: Vec<Out> = linear_form_images(&sigma, &m)
                .into_iter()
                .map(|v| Out::Int(v as i128))
                .collect();
            r.put("injective", is_injective(&sigma, &m))
                .put("images", Out::List(images))
                .put("m", m.clone());
            if let Some(terms) = &p.polynomial {
                restriction(terms, &m, &mut r)?;
            }
        }
        Payload::Charpoly(p) => {
            let rows = p
                .entries
                .rows()?
                .iter()
                .map(|row| row.iter().map(RationalInput::to_rational).collect())
                .collect::<Result<Vec<Vec<BigRational>>>>()?;
            let z = MultiplicationMatrix::from_rows(rows)?;
            let poly = char_poly(&z);
            r.put(
                "coefficients",
                poly.0.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            )
            .put("polynomial", poly.to_string())
            .put("cayley_hamilton", cayley_hamilton_check(&z))
            .put("leading_unit", leading_unit_check(&poly, false));
            if with_oracle {
                o.put("interpolation_agrees", char_poly_by_interpolation(&z) == poly);
            }
        }
    }
    Ok((r, with_oracle.then_some(o)))
}

fn num(f: &Fields, key: &str) -> f64 {
    match f.get(key) {
        Some(Out::Num(x)) => *x,
        _ => f64::NAN,
    }
}

fn relative_error(x: f64, exact: f64) -> f64 {
    if x == exact {
        0.0
    } else {
        (x - exact).abs() / exact.abs()
    }
}

fn radii(d: usize, entries: &[RadiusEntry]) -> Result<RadiusAssignment> {
    RadiusEntry::to_assignment(d, entries)
}

fn candidates(input: &[CandidateInput]) -> Result<(Vec<PullbackCandidate>, Vec<bool>)> {
    let mut out = Vec::with_capacity(input.len());
    for c in input {
        out.push(PullbackCandidate::new(
            MorphismDescriptor::new(c.d, c.degree, c.multiplicity)?,
            radii(c.d, &c.radii)?,
        )?);
    }
    Ok((out, input.iter().map(|c| c.contained).collect()))
}

fn lower_bound(candidates: &[PullbackCandidate], contained: &[bool]) -> Result<f64> {
    let mut flags = contained.iter();
    finite_morphism_capacity_lower_bound(candidates, |_| *flags.next().expect("one flag per candidate"))
}

fn green(
    p: &GreenPayload,
    tol: &Tolerances,
    r: &mut Fields,
    oracle: Option<&mut Fields>,
) -> Result<()> {
    let mut g = GreensMatrix::from_rows(&p.entries.rows()?)?;
    if let Some(orbits) = &p.orbits {
        let zero_based = orbits
            .iter()
            .map(|orbit| {
                orbit
                    .iter()
                    .map(|&i| {
                        i.checked_sub(1).ok_or_else(|| {
                            Error::Schema("field `orbits`: indices are 1-based".into())
                        })
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        g = g.with_orbits(zero_based)?;
    }
    let generators = p
        .generators
        .iter()
        .map(|images| Permutation::from_one_line(images))
        .collect::<Result<Vec<_>>>()?;
    validate(&g, &generators)?;

    let n = g.size();
    let definite = is_negative_definite_with(&g, tol);
    r.put("n", n).put("negative_definite", definite);
    if let Some(w) = &p.weights {
        let s = WeightVector::divisor(w.clone())?;
        r.put("S_gamma", sectional_capacity_from_weights_with(&g, &s, tol)?);
    }
    let solution = game_value_with(&g.as_game(), tol)?;
    r.put("game_value", solution.value)
        .put("gamma_CR", (-solution.value).exp())
        .put("row_strategy", solution.row_strategy.clone());

    let equilibrium: Option<Equilibrium> = match p.equilibrium {
        Some(false) => None,
        Some(true) => Some(equilibrium_weights_with(&g, tol)?),
        None if !definite => None,
        None => match equilibrium_weights_with(&g, tol) {
            Ok(e) => Some(e),
            Err(e) if e.class() == ErrorClass::Input => return Err(e),
            Err(e) => {
                r.put("equilibrium_error", e.code());
                None
            }
        },
    };
    if let Some(e) = &equilibrium {
        r.put("s_hat", e.weights.values().to_vec())
            .put("lambda", e.lambda)
            .put("S_plus", (-e.lambda).exp());
    }

    if let Some(o) = oracle {
        if n <= GRID_DIMENSION_CAP {
            let spec = GridSpec::new(n, tol.grid_step)?;
            let (value, argmax) = grid_max_quadratic(&g, &spec)?;
            o.put("grid_step", spec.step())
                .put("grid_max", value)
                .put("grid_argmax", argmax.values().to_vec());
            if let Some(e) = &equilibrium {
                o.put("lambda_minus_grid", e.lambda - value);
            }
            game_oracle(&g.as_game(), tol, o)?;
        } else {
            o.put("skipped", format!("dimension {n} exceeds the oracle cap {GRID_DIMENSION_CAP}"));
        }
    }
    Ok(())
}

fn game_oracle(g: &GameMatrix, tol: &Tolerances, o: &mut Fields) -> Result<()> {
    let n = g.size();
    if n == 2 {
        o.put("closed_form_value", game_value_2x2(g)?);
    }
    if n <= 3 {
        let (lower, upper) = grid_game_bounds(g, &GridSpec::new(n, tol.grid_step)?)?;
        o.put("grid_value_lower", lower).put("grid_value_upper", upper);
    }
    Ok(())
}

fn game(p: &GamePayload, tol: &Tolerances, r: &mut Fields, oracle: Option<&mut Fields>) -> Result<()> {
    let g = GameMatrix::from_rows(&p.entries.rows()?)?;
    let solution = game_value_with(&g, tol)?;
    r.put("value", solution.value)
        .put("row_strategy", solution.row_strategy)
        .put("col_strategy", solution.col_strategy);
    if let Some(c) = p.shift {
        r.put("shift", c).put("shifted_value", shifted_value(&g, c)?);
    }
    if let Some(o) = oracle {
        game_oracle(&g, tol, o)?;
    }
    Ok(())
}

fn pullback(
    p: &PullbackPayload,
    tol: &Tolerances,
    r: &mut Fields,
    oracle: Option<&mut Fields>,
) -> Result<()> {
    let mut morphism = MorphismDescriptor::new(p.d, p.degree, p.multiplicity)?;
    if let Some(dd) = p.divisor_degree {
        morphism = morphism.with_divisor_degree(dd)?;
    }
    let radii = radii(p.d, &p.radii)?;
    let candidate = PullbackCandidate::new(morphism, radii.clone())?;
    let s = pullback_sectional_capacity(&candidate)?;
    r.put("exponent", morphism.capacity_exponent()).put("S_gamma", s);
    if let Some(dd) = p.divisor_degree {
        let a = adjusted_exponent(p.d, dd)?;
        r.put("adjusted_exponent", a).put("normalized", (s.ln() * a).exp());
    }
    if p.d == 1 && p.degree % p.multiplicity == 0 {
        let check = curve_pullback_identity_check(p.degree, p.multiplicity, &radii, tol.relative)?;
        r.put("identity_lhs", check.lhs)
            .put("identity_rhs", check.rhs)
            .put("identity_pass", check.pass);
    }
    if let Some(o) = oracle {
        let exact = pullback_capacity_exact(&candidate)?;
        o.put("S_gamma_exact", exact).put("relative_error", relative_error(s, exact));
    }
    Ok(())
}

fn restriction(terms: &[TermInput], m: &[u64], r: &mut Fields) -> Result<()> {
    let n = m.len();
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        if t.monomial.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.monomial.len(),
            });
        }
        let c = t.coefficient.to_rational()?;
        if !c.is_integer() {
            return Err(Error::Schema(format!(
                "field `polynomial`: coefficient {c} is not an integer"
            )));
        }
        parsed.push((t.monomial.clone(), c.to_integer()));
    }
    let poly = SparsePolynomial { terms: parsed };
    let support = poly.support()?;
    if !is_injective(&support, m) {
        return Err(Error::domain(
            "polynomial support is not covered by the exponent set",
        ));
    }
    let restricted = poly.restrict_to_monomial_curve(m);
    let mut before: Vec<BigInt> = poly.terms.iter().map(|(_, c)| c.clone()).filter(|c| !c.is_zero()).collect();
    let mut after: Vec<BigInt> = restricted.values().cloned().collect();
    before.sort();
    after.sort();
    let listed: Vec<Out> = restricted
        .iter()
        .map(|(k, c)| Out::List(vec![Out::Int(*k as i128), Out::Str(c.to_string())]))
        .collect();
    r.put("restricted", Out::List(listed))
        .put("coefficients_preserved", before == after);
    Ok(())
}
