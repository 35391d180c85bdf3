//! Jobs: the common currency of the command line and fixtures.

use crate::error::CliError;
use clap::{Parser, Subcommand, ValueEnum};
use holodep_core::Field;
use serde::Deserialize;
use std::path::PathBuf;

pub const COMMANDS: &[&str] = &[
    "parse",
    "fixpoints",
    "poincare",
    "boettcher",
    "algdep",
    "implicitize",
    "one-to-one",
    "semiconj",
    "commute",
    "common-iterate",
    "independence",
    "theorem-check",
    "orbifold-euler",
    "orbifold-check",
    "lattes-detect",
    "verify-paper",
    "transport",
    "boettcher-transport",
    "invariant-curve",
    "local-degree",
    "multiplier-dependence",
    "degree-compat",
];

/// One unit of work. Every field except `command` is optional at the type
/// level; [`JobSpec::validate`] checks what the command needs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, default, rename_all = "snake_case")]
pub struct JobSpec {
    pub command: String,
    pub field: Option<String>,
    pub expr: Option<String>,
    pub map: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub x: Option<String>,
    pub a1: Option<String>,
    pub a2: Option<String>,
    pub x1: Option<String>,
    pub x2: Option<String>,
    pub curve: Option<String>,
    pub point: Option<String>,
    pub z0: Option<String>,
    pub z1: Option<String>,
    pub z2: Option<String>,
    pub lambda1: Option<String>,
    pub lambda2: Option<String>,
    pub leading: Option<String>,
    pub s1: Option<String>,
    pub s2: Option<String>,
    pub support: Option<String>,
    pub target: Option<String>,
    pub mode: Option<String>,
    pub scales: Option<Vec<String>>,
    pub order: Option<usize>,
    pub bidegree: Option<[usize; 2]>,
    pub d1: Option<usize>,
    pub d2: Option<usize>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    pub k: Option<usize>,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub bound: Option<u64>,
    pub cap: Option<usize>,
    pub nu_max: Option<u32>,
    pub budget: Option<usize>,
    pub dir: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl JobSpec {
    pub fn field(&self) -> Result<Field, CliError> {
        match self.field.as_deref().unwrap_or("Q") {
            "Q" => Ok(Field::Q),
            "Qi" => Ok(Field::Qi),
            other => Err(CliError::Usage(format!(
                "unknown field '{other}', expected Q or Qi"
            ))),
        }
    }

    fn required(&self) -> &'static [&'static str] {
        match self.command.as_str() {
            "parse" => &["expr"],
            "fixpoints" | "lattes-detect" => &["map"],
            "poincare" | "local-degree" => &["map", "point"],
            "boettcher" => &["map"],
            "algdep" => &["s1", "s2", "bidegree"],
            "implicitize" | "one-to-one" => &["x1", "x2"],
            "semiconj" | "boettcher-transport" => &["a", "x", "b"],
            "transport" => &["a", "x", "b", "point"],
            "commute" | "common-iterate" => &["a", "b"],
            "independence" => &["a1", "z1", "a2", "z2"],
            "theorem-check" => &["x1", "x2", "b", "a1", "a2", "z0", "d1", "d2"],
            "orbifold-euler" => &["support"],
            "orbifold-check" => &["map", "support"],
            "invariant-curve" => &["curve", "a1", "a2"],
            "multiplier-dependence" => &["lambda1", "lambda2"],
            "degree-compat" => &["n1", "n2"],
            _ => &[],
        }
    }

    fn has(&self, name: &str) -> bool {
        match name {
            "expr" => self.expr.is_some(),
            "map" => self.map.is_some(),
            "point" => self.point.is_some(),
            "s1" => self.s1.is_some(),
            "s2" => self.s2.is_some(),
            "bidegree" => self.bidegree.is_some(),
            "x1" => self.x1.is_some(),
            "x2" => self.x2.is_some(),
            "a" => self.a.is_some(),
            "b" => self.b.is_some(),
            "x" => self.x.is_some(),
            "a1" => self.a1.is_some(),
            "a2" => self.a2.is_some(),
            "z0" => self.z0.is_some(),
            "z1" => self.z1.is_some(),
            "z2" => self.z2.is_some(),
            "d1" => self.d1.is_some(),
            "d2" => self.d2.is_some(),
            "support" => self.support.is_some(),
            "curve" => self.curve.is_some(),
            "lambda1" => self.lambda1.is_some(),
            "lambda2" => self.lambda2.is_some(),
            "n1" => self.n1.is_some(),
            "n2" => self.n2.is_some(),
            _ => false,
        }
    }

    /// Known command, known field, required parameters present.
    pub fn validate(&self) -> Result<(), CliError> {
        if !COMMANDS.contains(&self.command.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown command '{}'",
                self.command
            )));
        }
        self.field()?;
        let missing: Vec<&str> = self
            .required()
            .iter()
            .copied()
            .filter(|n| !self.has(n))
            .collect();
        if !missing.is_empty() {
            return Err(CliError::Usage(format!(
                "{} requires: {}",
                self.command,
                missing.join(", ")
            )));
        }
        if let Some(mode) = &self.mode {
            if !["covering", "minimal", "holomorphic", "lattes"].contains(&mode.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown orbifold-check mode '{mode}'"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qi")]
    Qi,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CheckMode {
    Covering,
    Minimal,
    Holomorphic,
    Lattes,
}

/// Exact computer algebra for Poincaré and Böttcher series of rational maps.
#[derive(Debug, Parser)]
#[command(name = "holodep", version)]
pub struct Cli {
    /// Coefficient field for parsing and printing.
    #[arg(long, global = true, value_enum, default_value = "Q")]
    pub field: FieldArg,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a rational function and print it canonically.
    Parse { expr: String },
    /// Fixed points with multipliers.
    Fixpoints {
        #[arg(long)]
        map: String,
    },
    /// Normalized Poincaré series at a fixed point.
    Poincare {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Böttcher series of a polynomial at infinity.
    Boettcher {
        #[arg(long)]
        map: String,
        #[arg(long)]
        order: Option<usize>,
        /// Leading coefficient to use among the admissible roots.
        #[arg(long)]
        leading: Option<String>,
    },
    /// Search for a polynomial relation between two series.
    ///
    /// A series source is `MAP@POINT` (Poincaré series), `boettcher:MAP`, or
    /// `file:PATH` holding series JSON.
    Algdep {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        bidegree: Vec<usize>,
        #[arg(long)]
        order: Option<usize>,
        /// Substitute `z^d1` into the first series.
        #[arg(long)]
        d1: Option<usize>,
        #[arg(long)]
        d2: Option<usize>,
        /// Rescalings `c` of the second series to try, comma separated.
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<String>>,
    },
    /// Implicit equation of the curve `t ↦ (X1(t), X2(t))`.
    Implicitize {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
    },
    /// Whether `t ↦ (X1(t), X2(t))` is generically one-to-one onto its image.
    OneToOne {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
    },
    /// Check `A ∘ X = X ∘ B`.
    Semiconj {
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
    },
    /// Check `A ∘ B = B ∘ A`.
    Commute {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Search for `A^l1 = B^l2` within a degree cap.
    CommonIterate {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Degree and multiplier test for independence of Poincaré functions.
    Independence {
        #[arg(long)]
        a1: String,
        #[arg(long)]
        z1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        z2: String,
    },
    /// Check every condition of a semiconjugacy diagram separately.
    TheoremCheck {
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        z0: String,
        #[arg(long)]
        z1: Option<String>,
        #[arg(long)]
        z2: Option<String>,
        #[arg(long)]
        l1: Option<usize>,
        #[arg(long)]
        l2: Option<usize>,
        #[arg(long)]
        d1: usize,
        #[arg(long)]
        d2: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Euler characteristic of an orbifold such as `0:2,inf:2`.
    OrbifoldEuler {
        #[arg(long)]
        support: String,
    },
    /// Check a map between orbifolds.
    OrbifoldCheck {
        #[arg(long)]
        map: String,
        /// Source orbifold.
        #[arg(long)]
        support: String,
        /// Target orbifold; defaults to the source.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<CheckMode>,
    },
    /// Bounded search for an orbifold making the map generalized Lattès.
    LattesDetect {
        #[arg(long)]
        map: String,
        #[arg(long)]
        nu_max: Option<u32>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Run every fixture in a directory and report pass or fail per check.
    VerifyPaper {
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Worker threads for independent fixtures.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Transport of Poincaré series through `A ∘ X = X ∘ B` at a fixed point of `B`.
    Transport {
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Transport of Böttcher series through `A ∘ X = X ∘ B`.
    BoettcherTransport {
        #[arg(long)]
        a: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Whether `(A1, A2)` maps the curve `f(x, y) = 0` into itself.
    InvariantCurve {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        x1: Option<String>,
        #[arg(long)]
        x2: Option<String>,
    },
    /// Local degree of a map at a point.
    LocalDegree {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
    },
    /// Minimal `(l1, l2)` with `lambda1^l1 = lambda2^l2`.
    MultiplierDependence {
        #[arg(long, allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: String,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Minimal `(l1, l2)` with `n1^l1 = n2^l2`.
    DegreeCompat {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
    },
}

impl Cli {
    pub fn into_job(self) -> JobSpec {
        let field = Some(
            match self.field {
                FieldArg::Q => "Q",
                FieldArg::Qi => "Qi",
            }
            .to_string(),
        );
        let base = |command: &str| JobSpec {
            command: command.to_string(),
            field: field.clone(),
            ..JobSpec::default()
        };
        match self.command {
            Command::Parse { expr } => JobSpec {
                expr: Some(expr),
                ..base("parse")
            },
            Command::Fixpoints { map } => JobSpec {
                map: Some(map),
                ..base("fixpoints")
            },
            Command::Poincare { map, point, order } => JobSpec {
                map: Some(map),
                point: Some(point),
                order,
                ..base("poincare")
            },
            Command::Boettcher {
                map,
                order,
                leading,
            } => JobSpec {
                map: Some(map),
                order,
                leading,
                ..base("boettcher")
            },
            Command::Algdep {
                s1,
                s2,
                bidegree,
                order,
                d1,
                d2,
                scales,
            } => JobSpec {
                s1: Some(s1),
                s2: Some(s2),
                bidegree: Some([bidegree[0], bidegree[1]]),
                order,
                d1,
                d2,
                scales,
                ..base("algdep")
            },
            Command::Implicitize { x1, x2 } => JobSpec {
                x1: Some(x1),
                x2: Some(x2),
                ..base("implicitize")
            },
            Command::OneToOne { x1, x2 } => JobSpec {
                x1: Some(x1),
                x2: Some(x2),
                ..base("one-to-one")
            },
            Command::Semiconj { a, x, b } => JobSpec {
                a: Some(a),
                x: Some(x),
                b: Some(b),
                ..base("semiconj")
            },
            Command::Commute { a, b } => JobSpec {
                a: Some(a),
                b: Some(b),
                ..base("commute")
            },
            Command::CommonIterate { a, b, cap } => JobSpec {
                a: Some(a),
                b: Some(b),
                cap,
                ..base("common-iterate")
            },
            Command::Independence { a1, z1, a2, z2 } => JobSpec {
                a1: Some(a1),
                z1: Some(z1),
                a2: Some(a2),
                z2: Some(z2),
                ..base("independence")
            },
            Command::TheoremCheck {
                x1,
                x2,
                b,
                a1,
                a2,
                z0,
                z1,
                z2,
                l1,
                l2,
                d1,
                d2,
                k,
            } => JobSpec {
                x1: Some(x1),
                x2: Some(x2),
                b: Some(b),
                a1: Some(a1),
                a2: Some(a2),
                z0: Some(z0),
                z1,
                z2,
                l1,
                l2,
                d1: Some(d1),
                d2: Some(d2),
                k,
                ..base("theorem-check")
            },
            Command::OrbifoldEuler { support } => JobSpec {
                support: Some(support),
                ..base("orbifold-euler")
            },
            Command::OrbifoldCheck {
                map,
                support,
                target,
                mode,
            } => JobSpec {
                map: Some(map),
                support: Some(support),
                target,
                mode: mode.map(|m| {
                    m.to_possible_value()
                        .expect("no skipped variants")
                        .get_name()
                        .to_string()
                }),
                ..base("orbifold-check")
            },
            Command::LattesDetect {
                map,
                nu_max,
                budget,
            } => JobSpec {
                map: Some(map),
                nu_max,
                budget,
                ..base("lattes-detect")
            },
            Command::VerifyPaper { dir, jobs } => JobSpec {
                dir,
                jobs,
                ..base("verify-paper")
            },
            Command::Transport {
                a,
                x,
                b,
                point,
                order,
            } => JobSpec {
                a: Some(a),
                x: Some(x),
                b: Some(b),
                point: Some(point),
                order,
                ..base("transport")
            },
            Command::BoettcherTransport { a, x, b, order } => JobSpec {
                a: Some(a),
                x: Some(x),
                b: Some(b),
                order,
                ..base("boettcher-transport")
            },
            Command::InvariantCurve {
                curve,
                a1,
                a2,
                x1,
                x2,
            } => JobSpec {
                curve: Some(curve),
                a1: Some(a1),
                a2: Some(a2),
                x1,
                x2,
                ..base("invariant-curve")
            },
            Command::LocalDegree { map, point } => JobSpec {
                map: Some(map),
                point: Some(point),
                ..base("local-degree")
            },
            Command::MultiplierDependence {
                lambda1,
                lambda2,
                bound,
            } => JobSpec {
                lambda1: Some(lambda1),
                lambda2: Some(lambda2),
                bound,
                ..base("multiplier-dependence")
            },
            Command::DegreeCompat { n1, n2 } => JobSpec {
                n1: Some(n1),
                n2: Some(n2),
                ..base("degree-compat")
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let bad: Result<JobSpec, _> = serde_json::from_str(r#"{"command": "parse", "exprr": "z"}"#);
        assert!(bad.is_err());
        let ok: JobSpec = serde_json::from_str(r#"{"command": "parse", "expr": "z"}"#).unwrap();
        assert!(ok.validate().is_ok());
    }

    #[test]
    fn validation() {
        let job = JobSpec {
            command: "poincare".into(),
            map: Some("z^2".into()),
            ..JobSpec::default()
        };
        assert!(matches!(job.validate(), Err(CliError::Usage(m)) if m.contains("point")));
        let job = JobSpec {
            command: "nope".into(),
            ..JobSpec::default()
        };
        assert!(job.validate().is_err());
        let job = JobSpec {
            command: "parse".into(),
            expr: Some("z".into()),
            field: Some("R".into()),
            ..JobSpec::default()
        };
        assert!(job.validate().is_err());
    }

    #[test]
    fn every_command_has_a_subcommand() {
        use clap::CommandFactory;
        let cmd = Cli::command();
        for name in COMMANDS {
            assert!(cmd.find_subcommand(name).is_some(), "{name}");
        }
    }
}
