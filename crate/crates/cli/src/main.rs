mod io;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use satknot::{
    abelianization, abelianization_map, alexander_from_diagram, alexander_from_presentation,
    amalgamated_product, blackboard_double, build_w, certify_rank, classify, corpus, corpus_knot,
    exceeds_desk_scale, iterated_double, k_family, layer_quotient, layer_structure, linking_number,
    nonembed_report, ratio_table, tietze_simplify, twist_knot, unclasp_link, whitehead_double,
    wirtinger, wirtinger_link, writhe, Diagram, GroupPresentation, ManifoldSpec,
};
use serde_json::{json, Value};

use crate::io::{
    exists, layer_word, load_group, parse_word, read_source, CliResult, DiagramInput, Failure,
    MetaInput,
};

#[derive(Parser, Debug)]
#[command(
    name = "satknot",
    version,
    about = "Whitehead doubles, knot groups, Alexander polynomials and rank certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Out {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Validate a PD code and print it canonically.
    Parse {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Whitehead double with twisting number --tau (blackboard framing if omitted).
    Double {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, allow_negative_numbers = true)]
        tau: Option<i64>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        clasp: i64,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Twist knot with --j full twists.
    TwistKnot {
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Iterated Whitehead double, one twisting number per level.
    Iterate {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        taus: Vec<i64>,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        clasp: i64,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// The knot K_l of the family over companion K with m half-twists.
    KFamily {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Unclasp a double (JSON from `double --out json`, or PD plus --provenance).
    Unclasp {
        #[command(flatten)]
        input: DiagramInput,
        /// Provenance sidecar JSON for a PD input.
        #[arg(long, value_name = "PATH")]
        provenance: Option<String>,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Alexander polynomial of a knot diagram or of a presentation.
    Alexander {
        #[command(flatten)]
        input: DiagramInput,
        /// Presentation JSON instead of a diagram.
        #[arg(long, value_name = "PATH")]
        group: Option<String>,
        /// Exponents of t per generator (computed from the abelianization if omitted).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        images: Option<Vec<i64>>,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Wirtinger presentation with peripheral systems.
    Wirtinger {
        #[command(flatten)]
        input: DiagramInput,
        /// Allow link diagrams (one peripheral system per component).
        #[arg(long)]
        link: bool,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Greedy Tietze simplification of a presentation or of a Wirtinger presentation.
    Tietze {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, value_name = "PATH")]
        group: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Amalgamated product of two presentations.
    Amalgamate {
        #[arg(long, value_name = "PATH")]
        left: String,
        #[arg(long, value_name = "PATH")]
        right: String,
        /// Gluing pair "u;v" of words (signed 1-based indices), repeatable.
        #[arg(long, value_name = "U;V", allow_hyphen_values = true)]
        glue: Vec<String>,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Presentation of the K_l knot group assembled from layer groups.
    LayerQuotient {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Rank and tunnel-number certificate for the n-fold double.
    CertifyRank {
        #[arg(long)]
        knot: Option<String>,
        #[command(flatten)]
        meta: MetaInput,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Exact ratios lower/(n+1) and upper/(n+1) for n = 0..=n_max.
    RatioTable {
        #[arg(long)]
        knot: Option<String>,
        #[command(flatten)]
        meta: MetaInput,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Validate a manifold spec W(K, m) with a layer word.
    BuildW {
        #[command(flatten)]
        w: WArgs,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Compare two manifold specs by invariants.
    Classify {
        /// Spec JSON path, or shorthand KNOT:M[:TAIL] with a corpus knot.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// Nonembeddability certificate for a manifold spec.
    NonembedReport {
        /// Spec JSON path (instead of the diagram flags).
        #[arg(long, value_name = "PATH")]
        spec: Option<String>,
        #[command(flatten)]
        w: WArgs,
        #[arg(long, allow_negative_numbers = true)]
        l_max: i64,
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
    /// List the bundled corpus.
    CorpusList {
        #[arg(long, value_enum)]
        out: Option<Out>,
    },
}

#[derive(clap::Args, Debug, Clone, Default)]
struct WArgs {
    #[command(flatten)]
    input: DiagramInput,
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    /// bing or sternfeld.
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated layers before the repeating tail.
    #[arg(long, default_value = "")]
    prefix: String,
    /// Comma-separated repeating layers, e.g. "L,L*".
    #[arg(long)]
    tail: Option<String>,
}

impl WArgs {
    fn build(&self) -> CliResult<(ManifoldSpec, Vec<satknot::Warning>)> {
        let m = self
            .m
            .ok_or_else(|| Failure::Usage("--m is required".into()))?;
        let word = layer_word(self.preset.as_deref(), &self.prefix, self.tail.as_deref())?;
        Ok(build_w(&self.input.load()?, m, word)?)
    }
}

fn clasp_sign(c: i64) -> CliResult<i8> {
    i8::try_from(c).map_err(|_| Failure::Domain(satknot::Error::BadClaspSign(c)))
}

fn diagram_json(d: &Diagram) -> Value {
    json!({
        "pd": d.to_string(),
        "crossings": d.crossing_count(),
        "components": d.n_components(),
        "writhe": writhe(d).ok(),
        "provenance": d.provenance(),
    })
}

fn presentation_text(p: &GroupPresentation) -> String {
    let mut s = p.to_string();
    for (i, pp) in p.peripheral.iter().enumerate() {
        s.push_str(&format!(
            "\nperipheral {i}: meridian {} ; longitude {}",
            p.format_word(&pp.meridian),
            p.format_word(&pp.longitude)
        ));
    }
    s
}

fn with_extra(mut v: Value, extra: Value) -> Value {
    if let (Some(o), Value::Object(e)) = (v.as_object_mut(), extra) {
        o.extend(e);
    }
    v
}

fn group_input(input: &DiagramInput, group: &Option<String>) -> CliResult<GroupPresentation> {
    match (group, input.given()) {
        (Some(path), false) => load_group(path),
        (None, true) => Ok(wirtinger(&input.load()?)?),
        _ => Err(Failure::Usage(
            "give either --group or one diagram input".into(),
        )),
    }
}

fn spec_arg(s: &str) -> CliResult<ManifoldSpec> {
    if exists(s) || s == "-" {
        let text = read_source(s)?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Domain(satknot::Error::BadJson(e.to_string())))?;
        let inner = v.get("spec").cloned().unwrap_or(v);
        return Ok(ManifoldSpec::from_json(&inner.to_string())?.0);
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Failure::Usage(format!(
            "{s:?} is neither a file nor KNOT:M[:TAIL]"
        )));
    }
    let m: i64 = parts[1]
        .parse()
        .map_err(|_| Failure::Usage(format!("bad m in {s:?}")))?;
    let word = layer_word(None, "", parts.get(2).copied())?;
    Ok(build_w(&corpus_knot(parts[0])?.diagram, m, word)?.0)
}

/// Output of a subcommand: JSON payload plus its text rendering.
struct Output {
    json: Value,
    text: String,
}

fn run(cmd: Cmd) -> CliResult<(Output, Option<Out>, Out)> {
    use Out::{Json, Text};
    Ok(match cmd {
        Cmd::Parse { input, out } => {
            let d = input.load()?;
            let j = with_extra(
                diagram_json(&d),
                json!({ "signs": d.signs(), "component_ranges": d.component_ranges(), "free_loops": d.free_loops() }),
            );
            (
                Output {
                    json: j,
                    text: d.to_string(),
                },
                out,
                Text,
            )
        }
        Cmd::Double {
            input,
            tau,
            clasp,
            out,
        } => {
            let d = input.load()?;
            let c = clasp_sign(clasp)?;
            let dd = match tau {
                Some(t) => whitehead_double(&d, t, c)?,
                None => blackboard_double(&d, c)?,
            };
            (
                Output {
                    json: diagram_json(&dd),
                    text: dd.to_string(),
                },
                out,
                Text,
            )
        }
        Cmd::TwistKnot { j, out } => {
            let d = twist_knot(j);
            (
                Output {
                    json: with_extra(diagram_json(&d), json!({ "j": j })),
                    text: d.to_string(),
                },
                out,
                Text,
            )
        }
        Cmd::Iterate {
            input,
            taus,
            clasp,
            out,
        } => {
            let d = input.load()?;
            let warn = exceeds_desk_scale(&d, taus.len());
            if warn {
                eprintln!(
                    "warning: {} doubling levels over a {}-crossing companion exceeds desk scale",
                    taus.len(),
                    d.crossing_count()
                );
            }
            let dd = iterated_double(&d, &taus, clasp_sign(clasp)?)?;
            let j = with_extra(
                diagram_json(&dd),
                json!({ "taus": taus, "desk_scale_warning": warn }),
            );
            (
                Output {
                    json: j,
                    text: dd.to_string(),
                },
                out,
                Text,
            )
        }
        Cmd::KFamily { input, m, l, out } => {
            let f = k_family(&input.load()?, m, l)?;
            let text = format!(
                "{}\ntau = {}\ncrossings = {}",
                f.diagram,
                f.tau,
                f.diagram.crossing_count()
            );
            let j = with_extra(
                diagram_json(&f.diagram),
                json!({ "tau": f.tau, "m": m, "l": l, "levels": f.levels }),
            );
            (Output { json: j, text }, out, Text)
        }
        Cmd::Unclasp {
            input,
            provenance,
            out,
        } => {
            let mut d = input.load()?;
            if let Some(path) = provenance {
                let prov = serde_json::from_str(&read_source(&path)?)
                    .map_err(|e| Failure::Domain(satknot::Error::BadJson(e.to_string())))?;
                d = satknot::attach_provenance(&d, prov)?;
            }
            let link = unclasp_link(&d)?;
            let lk = linking_number(&link, 0, 1)?;
            let j = with_extra(diagram_json(&link), json!({ "linking_number": lk }));
            (
                Output {
                    json: j,
                    text: format!("{link}\nlinking number: {lk}"),
                },
                out,
                Text,
            )
        }
        Cmd::Alexander {
            input,
            group,
            images,
            out,
        } => {
            let poly = match (&group, input.given()) {
                (Some(path), false) => {
                    let p = load_group(path)?;
                    let im = match images {
                        Some(v) => v,
                        None => abelianization_map(&p)?,
                    };
                    alexander_from_presentation(&p, &im)?
                }
                (None, true) => alexander_from_diagram(&input.load()?)?,
                _ => {
                    return Err(Failure::Usage(
                        "give either --group or one diagram input".into(),
                    ))
                }
            };
            let j = json!({ "alexander": poly, "pretty": poly.to_string() });
            (
                Output {
                    json: j,
                    text: poly.to_string(),
                },
                out,
                Text,
            )
        }
        Cmd::Wirtinger { input, link, out } => {
            let d = input.load()?;
            let p = if link {
                wirtinger_link(&d)
            } else {
                wirtinger(&d)?
            };
            let text = presentation_text(&p);
            (
                Output {
                    json: serde_json::to_value(&p).unwrap(),
                    text,
                },
                out,
                Json,
            )
        }
        Cmd::Tietze {
            input,
            group,
            budget,
            out,
        } => {
            let p = group_input(&input, &group)?;
            let o = tietze_simplify(&p, budget);
            let text = format!(
                "{}\ngenerators: {} (from {}), steps: {}, budget exhausted: {}",
                presentation_text(&o.presentation),
                o.presentation.generators.len(),
                p.generators.len(),
                o.steps,
                o.budget_exhausted
            );
            let j = json!({
                "presentation": o.presentation,
                "generators": o.presentation.generators.len(),
                "input_generators": p.generators.len(),
                "steps": o.steps,
                "budget_exhausted": o.budget_exhausted,
            });
            (Output { json: j, text }, out, Json)
        }
        Cmd::Amalgamate {
            left,
            right,
            glue,
            out,
        } => {
            let (p1, p2) = (load_group(&left)?, load_group(&right)?);
            let pairs = glue
                .iter()
                .map(|g| {
                    let (u, v) = g
                        .split_once(';')
                        .ok_or_else(|| Failure::Usage(format!("glue {g:?} needs U;V")))?;
                    Ok((parse_word(u)?, parse_word(v)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let p = amalgamated_product(&p1, &p2, &pairs)?;
            let ab = abelianization(&p);
            let text = format!(
                "{}\nabelianization: free rank {}, torsion {:?}",
                presentation_text(&p),
                ab.free_rank,
                ab.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()
            );
            (
                Output {
                    json: json!({ "presentation": p, "abelianization": ab }),
                    text,
                },
                out,
                Json,
            )
        }
        Cmd::LayerQuotient { input, m, l, out } => {
            let p = layer_quotient(&input.load()?, m, l)?;
            let ab = abelianization(&p);
            let im = abelianization_map(&p)?;
            let poly = alexander_from_presentation(&p, &im)?;
            let text = format!("{}\nalexander: {poly}", presentation_text(&p));
            let j = json!({
                "presentation": p,
                "abelianization": ab,
                "images": im,
                "alexander": poly,
                "pretty": poly.to_string(),
            });
            (Output { json: j, text }, out, Json)
        }
        Cmd::CertifyRank { knot, meta, n, out } => {
            let m = meta.load(knot.as_deref())?;
            let c = certify_rank(&m, n)?;
            let layers = if n >= 1 {
                Some(layer_structure(&m, n)?)
            } else {
                None
            };
            let opt = |x: Option<u64>| x.map_or("none".to_string(), |v| v.to_string());
            let mut text = format!(
                "n = {}\nrank lower = {}\nrank upper = {}\nrank exact = {}\ntunnel lower = {}\ntunnel upper = {}",
                c.n,
                c.lower,
                opt(c.upper),
                opt(c.exact),
                c.tunnel.lower,
                opt(c.tunnel.upper)
            );
            for p in &c.provenance {
                text.push_str(&format!("\n  {p}"));
            }
            let j = with_extra(
                serde_json::to_value(&c).unwrap(),
                json!({ "layer_structure": layers }),
            );
            (Output { json: j, text }, out, Json)
        }
        Cmd::RatioTable {
            knot,
            meta,
            n_max,
            out,
        } => {
            let rows = ratio_table(&meta.load(knot.as_deref())?, n_max)?;
            let mut text = String::from("n\tlower/(n+1)\tupper/(n+1)\twidth");
            for r in &rows {
                text.push_str(&format!(
                    "\n{}\t{}\t{}\t{}",
                    r.n,
                    r.lower,
                    r.upper,
                    r.width()
                ));
            }
            (
                Output {
                    json: serde_json::to_value(&rows).unwrap(),
                    text,
                },
                out,
                Json,
            )
        }
        Cmd::BuildW { w, out } => {
            let (spec, warnings) = w.build()?;
            for x in &warnings {
                eprintln!("warning: {x:?}");
            }
            let text = format!(
                "W(K, m): K = {}, m = {}, tau = {}, word {}",
                spec.companion,
                spec.m,
                spec.tau,
                spec.word.describe()
            );
            (
                Output {
                    json: json!({ "spec": spec, "warnings": warnings }),
                    text,
                },
                out,
                Json,
            )
        }
        Cmd::Classify { a, b, out } => {
            let c = classify(&spec_arg(&a)?, &spec_arg(&b)?)?;
            let text = format!("{}\n{}", c.verdict.as_str(), c.reason);
            (
                Output {
                    json: serde_json::to_value(&c).unwrap(),
                    text,
                },
                out,
                Json,
            )
        }
        Cmd::NonembedReport {
            spec,
            w,
            l_max,
            out,
        } => {
            let s = match spec {
                Some(path) => spec_arg(&path)?,
                None => w.build()?.0,
            };
            let r = nonembed_report(&s, l_max)?;
            (
                Output {
                    json: serde_json::to_value(&r).unwrap(),
                    text: r.to_text(),
                },
                out,
                Json,
            )
        }
        Cmd::CorpusList { out } => {
            let mut rows = Vec::new();
            let mut text = String::from("name\tcrossings\twrithe\talexander\ttunnel\thyperbolic");
            for k in corpus() {
                let a = alexander_from_diagram(&k.diagram)?;
                let w = writhe(&k.diagram)?;
                text.push_str(&format!(
                    "\n{}\t{}\t{}\t{}\t{}\t{}",
                    k.name,
                    k.diagram.crossing_count(),
                    w,
                    a,
                    k.meta.tunnel_number.map_or("?".into(), |t| t.to_string()),
                    k.meta.is_hyperbolic.map_or("?".into(), |h| h.to_string())
                ));
                rows.push(json!({
                    "name": k.name,
                    "pd": k.diagram.to_string(),
                    "crossings": k.diagram.crossing_count(),
                    "writhe": w,
                    "alexander": a,
                    "pretty": a.to_string(),
                    "meta": k.meta,
                    "source": k.source,
                }));
            }
            (
                Output {
                    json: Value::Array(rows),
                    text,
                },
                out,
                Text,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok((o, out, default)) => {
            match out.unwrap_or(default) {
                Out::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("JSON output")
                ),
                Out::Text => println!("{}", o.text),
            }
            ExitCode::SUCCESS
        }
        Err(f @ Failure::Domain(_)) => {
            eprintln!("error: {f}");
            ExitCode::from(1)
        }
        Err(f @ Failure::Usage(_)) => {
            eprintln!("usage error: {f}");
            ExitCode::from(2)
        }
    }
}
