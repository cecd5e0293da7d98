//! Problem files: the two zero sets plus how to pick the weights.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fuzz::{Arithmetic, CircleCase, RealCase, Setting};
use crate::interlacing::CircleInput;
use crate::kernel::WeightSelection;
use crate::scalar::{parse_rational, Rational, Real, C64};
use crate::verify::Profile;

pub const SCHEMA: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    #[serde(alias = "sum-all", alias = "automatic")]
    #[value(alias = "sum_all")]
    SumAll,
    Coefficients,
    Cover,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::SumAll => "sum_all",
            Strategy::Coefficients => "coefficients",
            Strategy::Cover => "cover",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub strategy: Strategy,
    /// `"s1" → "3"`; also accepts keys `"1"` and `"s[1]"`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coefficients: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub setting: Setting,
    /// Real: `"p/q"`, decimal strings or numbers. Circle: `{"re", "im"}`
    /// points, `"p/q pi"` angles, or plain numbers in radians.
    pub zn: Vec<Value>,
    pub zm: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arithmetic: Option<Arithmetic>,
    /// `"strict"`, `"standard"`, or a tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Value>,
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

fn parse_err(what: &'static str, input: impl ToString) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
    }
}

fn value_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.trim().to_string()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Parses `"2/3 pi"`, `"2/3*pi"`, `"-pi/4"`, `"pi"` as a multiple of π.
pub fn parse_pi_multiple(s: &str) -> Option<Rational> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = compact.to_ascii_lowercase();
    let at = lower.find("pi")?;
    let (head, tail) = (&lower[..at], &lower[at + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = match head {
        "" | "+" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        h => parse_rational(h).ok()?,
    };
    let divisor = match tail {
        "" => Rational::from_integer(1.into()),
        t => parse_rational(t.strip_prefix('/')?).ok()?,
    };
    if divisor == Rational::from_integer(0.into()) {
        return None;
    }
    Some(coeff / divisor)
}

/// One parsed circle point, remembering how it was written.
#[derive(Debug, Clone, PartialEq)]
pub enum CirclePoint {
    PiMultiple(Rational),
    Radians(f64),
    Point(C64),
}

impl CirclePoint {
    pub fn input(&self) -> CircleInput {
        match self {
            CirclePoint::PiMultiple(q) => CircleInput::Angle(q.to_f64() * PI),
            CirclePoint::Radians(t) => CircleInput::Angle(*t),
            CirclePoint::Point(z) => CircleInput::Point(*z),
        }
    }

    fn parse(v: &Value) -> Result<Self> {
        if let Value::Object(map) = v {
            let get = |k: &str| map.get(k).and_then(Value::as_f64);
            return match (get("re"), get("im"), map.len()) {
                (Some(re), Some(im), 2) => Ok(CirclePoint::Point(C64::new(re, im))),
                _ => Err(parse_err("circle point", v)),
            };
        }
        let text = value_text(v).ok_or_else(|| parse_err("circle point", v))?;
        if text.to_ascii_lowercase().contains("pi") {
            return parse_pi_multiple(&text)
                .map(CirclePoint::PiMultiple)
                .ok_or_else(|| parse_err("angle", &text));
        }
        let t: f64 = f64::parse_str(&text).map_err(|_| parse_err("angle", &text))?;
        Ok(CirclePoint::Radians(t))
    }

    fn mathematica(&self) -> String {
        match self {
            CirclePoint::PiMultiple(q) => format!("Exp[I Pi ({q})]"),
            CirclePoint::Radians(t) => format!("Exp[I {t}]"),
            CirclePoint::Point(z) => format!("Complex[{}, {}]", z.re, z.im),
        }
    }
}

/// A problem after parsing, before any interlacing check.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Real {
        xs: Vec<Rational>,
        ys: Vec<Rational>,
    },
    Circle {
        zn: Vec<CirclePoint>,
        zm: Vec<CirclePoint>,
    },
}

/// Everything a command needs from a problem file plus the command line.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub instance: Instance,
    pub arithmetic: Arithmetic,
    pub profile: Profile,
    pub strategy: Strategy,
    pub coefficients: BTreeMap<usize, Rational>,
}

impl Resolved {
    pub fn setting(&self) -> Setting {
        match self.instance {
            Instance::Real { .. } => Setting::Real,
            Instance::Circle { .. } => Setting::Circle,
        }
    }

    pub fn selection<T: Real>(&self) -> WeightSelection<T> {
        match self.strategy {
            Strategy::SumAll => WeightSelection::SumAll,
            Strategy::Cover => WeightSelection::Cover,
            Strategy::Coefficients => WeightSelection::Coefficients(
                self.coefficients
                    .iter()
                    .map(|(&k, v)| (k, T::from_rational(v.clone())))
                    .collect(),
            ),
        }
    }

    /// The problem as a call to the reference `OPRLFamily` routine.
    pub fn mathematica(&self) -> String {
        let list = |v: Vec<String>| format!("{{{}}}", v.join(", "));
        match &self.instance {
            Instance::Real { xs, ys } => {
                let zn = list(xs.iter().map(ToString::to_string).collect());
                let zm = list(ys.iter().map(ToString::to_string).collect());
                match self.strategy {
                    Strategy::SumAll => format!("OPRLFamily[{zn}, {zm}]"),
                    Strategy::Coefficients => {
                        let rules: Vec<String> = self
                            .coefficients
                            .iter()
                            .map(|(k, v)| format!("s[{k}] -> {v}"))
                            .collect();
                        format!("OPRLFamily[{zn}, {zm}, {}]", list(rules))
                    }
                    Strategy::Cover => {
                        format!("(* the cover strategy has no reference counterpart *)\nOPRLFamily[{zn}, {zm}]")
                    }
                }
            }
            Instance::Circle { zn, zm } => format!(
                "(* the reference routine covers the real line only *)\nZn = {};\nZm = {};",
                list(zn.iter().map(CirclePoint::mathematica).collect()),
                list(zm.iter().map(CirclePoint::mathematica).collect()),
            ),
        }
    }
}

/// Overrides taken from the command line; `None` keeps the file's value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub arithmetic: Option<Arithmetic>,
    pub profile: Option<Profile>,
    pub strategy: Option<Strategy>,
    pub params: Vec<(String, String)>,
}

pub fn parse_param_key(key: &str) -> Result<usize> {
    let k = key.trim();
    let k = k.strip_prefix('s').unwrap_or(k);
    let k = k
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(k);
    k.parse::<usize>()
        .map_err(|_| parse_err("parameter name", key))
}

fn parse_profile(v: &Value) -> Result<Profile> {
    let text = value_text(v).ok_or_else(|| parse_err("tolerance profile", v))?;
    text.parse()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let p: ProblemFile =
            serde_json::from_str(text).map_err(|e| parse_err("problem file", e))?;
        if p.schema != SCHEMA {
            return Err(parse_err("schema version", &p.schema));
        }
        Ok(p)
    }

    pub fn real(xs: &[Rational], ys: &[Rational]) -> Self {
        let text = |v: &[Rational]| v.iter().map(|q| Value::String(q.to_string())).collect();
        ProblemFile {
            schema: default_schema(),
            setting: Setting::Real,
            zn: text(xs),
            zm: text(ys),
            weights: None,
            arithmetic: None,
            profile: None,
        }
    }

    pub fn circle(thetas_over_pi: &[Rational], phis_over_pi: &[Rational]) -> Self {
        let text = |v: &[Rational]| v.iter().map(|q| Value::String(format!("{q} pi"))).collect();
        ProblemFile {
            schema: default_schema(),
            setting: Setting::Circle,
            zn: text(thetas_over_pi),
            zm: text(phis_over_pi),
            weights: None,
            arithmetic: None,
            profile: None,
        }
    }

    pub fn from_real_case(c: &RealCase) -> Self {
        Self::real(&c.xs, &c.ys)
    }

    pub fn from_circle_case(c: &CircleCase) -> Self {
        Self::circle(&c.thetas_over_pi, &c.phis_over_pi)
    }

    pub fn resolve(&self, over: &Overrides) -> Result<Resolved> {
        let instance = match self.setting {
            Setting::Real => {
                let parse = |v: &[Value]| -> Result<Vec<Rational>> {
                    v.iter()
                        .map(|x| {
                            let t = value_text(x).ok_or_else(|| parse_err("real point", x))?;
                            parse_rational(&t)
                        })
                        .collect()
                };
                Instance::Real {
                    xs: parse(&self.zn)?,
                    ys: parse(&self.zm)?,
                }
            }
            Setting::Circle => {
                let parse =
                    |v: &[Value]| v.iter().map(CirclePoint::parse).collect::<Result<Vec<_>>>();
                Instance::Circle {
                    zn: parse(&self.zn)?,
                    zm: parse(&self.zm)?,
                }
            }
        };
        let arithmetic = over
            .arithmetic
            .or(self.arithmetic)
            .unwrap_or(match self.setting {
                Setting::Real => Arithmetic::Rational,
                Setting::Circle => Arithmetic::Float64,
            });
        if self.setting == Setting::Circle && arithmetic == Arithmetic::Rational {
            return Err(Error::Unsupported(
                "circle problems run in float64 arithmetic".into(),
            ));
        }
        let profile = match (over.profile, &self.profile) {
            (Some(p), _) => p,
            (None, Some(v)) => parse_profile(v)?,
            (None, None) => Profile::Strict,
        };
        let file_strategy = self.weights.as_ref().map(|w| w.strategy);
        let mut coefficients = BTreeMap::new();
        if let Some(w) = &self.weights {
            for (k, v) in &w.coefficients {
                let text = value_text(v).ok_or_else(|| parse_err("coefficient", v))?;
                coefficients.insert(parse_param_key(k)?, parse_rational(&text)?);
            }
        }
        for (k, v) in &over.params {
            coefficients.insert(parse_param_key(k)?, parse_rational(v)?);
        }
        let strategy = over
            .strategy
            .or(file_strategy)
            .unwrap_or(if over.params.is_empty() {
                Strategy::SumAll
            } else {
                Strategy::Coefficients
            });
        Ok(Resolved {
            instance,
            arithmetic,
            profile,
            strategy,
            coefficients,
        })
    }
}
