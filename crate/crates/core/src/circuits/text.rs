use std::sync::Arc;

use super::*;
use crate::stabsim::parse_labels;

fn labels_str(l: &[LogicalLabel]) -> String {
    l.iter().map(|x| x.symbol()).collect()
}

fn rows_str(m: &BitMatrix) -> String {
    m.rows().iter().map(|r| r.to_bit_string()).collect::<Vec<_>>().join(",")
}

pub(super) fn format_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    if let Some(k) = c.metadata.kind {
        out.push_str(&format!("KIND {k}\n"));
    }
    match &c.metadata.action {
        LogicalAction::Identity => out.push_str("ACTION identity\n"),
        LogicalAction::Hadamard => out.push_str("ACTION hadamard\n"),
        LogicalAction::Prepare(l) => out.push_str(&format!("ACTION prepare {}\n", labels_str(l))),
    }
    if let Some(o) = &c.metadata.output {
        out.push_str(&format!("OUTPUT {o}\n"));
    }
    for (k, v) in &c.metadata.params {
        out.push_str(&format!("PARAM {k} {v}\n"));
    }
    for b in &c.blocks {
        let mut line = format!("BLOCK {}", b.name);
        match &b.code {
            Some(code) => {
                line.push_str(&format!(" code={code}"));
                match &b.init {
                    BlockInit::Logical(l) => line.push_str(&format!(" init={}", labels_str(l))),
                    BlockInit::Zeros => line.push_str(" init=zeros"),
                }
            }
            None => line.push_str(&format!(" raw={}", b.size)),
        }
        line.push_str(&format!(" role={}", b.role.name()));
        if let Some(p) = &b.prep {
            line.push_str(&format!(" prep={}:{}", p.kind, p.label));
        }
        if b.input {
            line.push_str(" input");
        }
        out.push_str(&line);
        out.push('\n');
    }
    for ins in &c.instructions {
        out.push_str(&format_instruction(ins));
        out.push('\n');
    }
    out
}

pub(super) fn format_instruction(ins: &Instruction) -> String {
    match ins {
        Instruction::Gate { gate, targets } => {
            let qs: Vec<String> = targets.iter().map(|q| q.to_string()).collect();
            format!("{} {}", gate.name(), qs.join(" "))
        }
        Instruction::TransversalGate { gate, a, b } => match b {
            Some(b) => format!("T{} {a} {b}", gate.name()),
            None => format!("T{} {a}", gate.name()),
        },
        Instruction::MeasureBlock { block, basis, label } => format!("MEAS{basis} {block} -> {label}"),
        Instruction::MeasureQubit { qubit, basis, label } => format!("MEAS{basis} {qubit} -> {label}"),
        Instruction::MeasureStabilizers { block, basis, rows, label } => {
            format!("MEASSTAB {block} {basis} {} -> {label}", rows_str(rows))
        }
        Instruction::ConditionalPauli { condition, pauli, block } => {
            format!("CPAULI {condition} {pauli} {block}")
        }
        Instruction::Recover { source, error_type, block } => {
            format!("RECOVER ({source}) {error_type} {block}")
        }
        Instruction::GaugeFix { source, error_type, block, checks, fix } => {
            format!("GAUGEFIX ({source}) {error_type} {block} {checks} {}", rows_str(fix))
        }
        Instruction::VerifyDiscard { condition } => format!("VERIFY {condition} DISCARD"),
        Instruction::ResetQubit { qubit } => format!("RESET {qubit}"),
        Instruction::ResetBlock { block, label } => match label {
            Some(l) => format!("RESET {block} {}", labels_str(l)),
            None => format!("RESET {block}"),
        },
        Instruction::Segment { name, published_two_qubit_gates } => {
            format!("SEGMENT {name} {published_two_qubit_gates}")
        }
        Instruction::EndSegment => "ENDSEGMENT".to_string(),
    }
}

fn qubit_ref(tok: &str) -> Option<QubitRef> {
    let (block, rest) = tok.split_once('[')?;
    let idx = rest.strip_suffix(']')?.parse().ok()?;
    Some(QubitRef { block: block.to_string(), index: idx })
}

fn parse_rows(tok: &str, line: usize) -> Result<BitMatrix, CircuitError> {
    let text = tok.replace(',', "\n");
    BitMatrix::parse_text(&text).map_err(|e| CircuitError::Parse { line, message: e.to_string() })
}

fn source_label(tok: &str, line: usize) -> Result<String, CircuitError> {
    tok.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .ok_or(CircuitError::Parse { line, message: format!("expected (label), got {tok:?}") })
}

/// Parse the text format. Code names referenced by `BLOCK` lines are looked
/// up in `codes`.
pub fn parse_circuit(text: &str, codes: &[(String, Arc<CssCode>)]) -> Result<Circuit, CircuitError> {
    let mut c = Circuit::new(codes.to_vec());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let err = |m: &str| CircuitError::Parse { line, message: format!("{m}: {content:?}") };
        let sim = |e: SimError| CircuitError::Parse { line, message: e.to_string() };
        let head = toks[0];
        match head {
            "KIND" => {
                c.metadata.kind = Some(toks.get(1).ok_or_else(|| err("missing kind"))?.parse()?);
            }
            "ACTION" => {
                c.metadata.action = match toks.get(1).copied() {
                    Some("identity") => LogicalAction::Identity,
                    Some("hadamard") => LogicalAction::Hadamard,
                    Some("prepare") => LogicalAction::Prepare(
                        parse_labels(toks.get(2).ok_or_else(|| err("missing labels"))?).map_err(sim)?,
                    ),
                    _ => return Err(err("unknown action")),
                };
            }
            "OUTPUT" => c.metadata.output = Some(toks.get(1).ok_or_else(|| err("missing block"))?.to_string()),
            "PARAM" => {
                if toks.len() != 3 {
                    return Err(err("PARAM takes a key and a value"));
                }
                c.set_param(toks[1], toks[2]);
            }
            "BLOCK" => {
                let name = toks.get(1).ok_or_else(|| err("missing block name"))?;
                let mut code = None;
                let mut raw_size = None;
                let mut init = None;
                let mut role = BlockRole::Helper;
                let mut prep = None;
                let mut input = false;
                for t in &toks[2..] {
                    if *t == "input" {
                        input = true;
                        continue;
                    }
                    let (k, v) = t.split_once('=').ok_or_else(|| err("expected key=value"))?;
                    match k {
                        "code" => code = Some(v.to_string()),
                        "raw" => raw_size = Some(v.parse::<usize>().map_err(|_| err("bad size"))?),
                        "init" => {
                            init = Some(if v == "zeros" {
                                BlockInit::Zeros
                            } else {
                                BlockInit::Logical(parse_labels(v).map_err(sim)?)
                            })
                        }
                        "role" => role = v.parse().map_err(|e: String| err(&e))?,
                        "prep" => {
                            let (kind, label) = v.split_once(':').ok_or_else(|| err("prep=kind:label"))?;
                            prep = Some(PrepSpec {
                                kind: kind.parse()?,
                                label: label.parse().map_err(sim)?,
                            });
                        }
                        _ => return Err(err("unknown block attribute")),
                    }
                }
                match (code, raw_size) {
                    (Some(code), None) => {
                        let n = c.code(&code)?.n;
                        c.blocks.push(Block {
                            name: name.to_string(),
                            code: Some(code),
                            size: n,
                            init: init.unwrap_or(BlockInit::Zeros),
                            role,
                            input,
                            prep,
                        });
                    }
                    (None, Some(size)) => {
                        c.blocks.push(Block {
                            name: name.to_string(),
                            code: None,
                            size,
                            init: BlockInit::Zeros,
                            role,
                            input,
                            prep,
                        });
                    }
                    _ => return Err(err("block needs exactly one of code= or raw=")),
                }
            }
            "MEASX" | "MEASZ" => {
                let basis = if head == "MEASX" { Basis::X } else { Basis::Z };
                if toks.len() != 4 || toks[2] != "->" {
                    return Err(err("expected MEASx <target> -> <label>"));
                }
                let label = toks[3].to_string();
                c.push(match qubit_ref(toks[1]) {
                    Some(qubit) => Instruction::MeasureQubit { qubit, basis, label },
                    None => Instruction::MeasureBlock { block: toks[1].to_string(), basis, label },
                });
            }
            "MEASSTAB" => {
                if toks.len() != 6 || toks[4] != "->" {
                    return Err(err("expected MEASSTAB <block> <X|Z> <rows> -> <label>"));
                }
                let basis = toks[2].parse().map_err(|e: String| err(&e))?;
                c.push(Instruction::MeasureStabilizers {
                    block: toks[1].to_string(),
                    basis,
                    rows: parse_rows(toks[3], line)?,
                    label: toks[5].to_string(),
                });
            }
            "CPAULI" => {
                if toks.len() != 4 {
                    return Err(err("expected CPAULI (<cond>) <pauli> <block>"));
                }
                let condition = toks[1].parse()?;
                let p = toks[2];
                let pauli = if let Some(rest) = p.strip_prefix("X_L").or_else(|| p.strip_prefix("Z_L")) {
                    let basis = if p.starts_with('X') { Basis::X } else { Basis::Z };
                    let index = if rest.is_empty() {
                        0
                    } else {
                        rest.strip_prefix('[')
                            .and_then(|r| r.strip_suffix(']'))
                            .and_then(|r| r.parse().ok())
                            .ok_or_else(|| err("bad logical index"))?
                    };
                    CorrectionPauli::Logical { basis, index }
                } else {
                    CorrectionPauli::Physical(p.parse().map_err(sim)?)
                };
                c.push(Instruction::ConditionalPauli { condition, pauli, block: toks[3].to_string() });
            }
            "RECOVER" => {
                if toks.len() != 4 {
                    return Err(err("expected RECOVER (<label>) <X|Z> <block>"));
                }
                c.push(Instruction::Recover {
                    source: source_label(toks[1], line)?,
                    error_type: toks[2].parse().map_err(|e: String| err(&e))?,
                    block: toks[3].to_string(),
                });
            }
            "GAUGEFIX" => {
                if toks.len() != 6 {
                    return Err(err("expected GAUGEFIX (<label>) <X|Z> <block> <checks> <rows>"));
                }
                c.push(Instruction::GaugeFix {
                    source: source_label(toks[1], line)?,
                    error_type: toks[2].parse().map_err(|e: String| err(&e))?,
                    block: toks[3].to_string(),
                    checks: toks[4].parse().map_err(|_| err("bad check count"))?,
                    fix: parse_rows(toks[5], line)?,
                });
            }
            "VERIFY" => {
                if toks.len() != 3 || toks[2] != "DISCARD" {
                    return Err(err("expected VERIFY (<cond>) DISCARD"));
                }
                c.push(Instruction::VerifyDiscard { condition: toks[1].parse()? });
            }
            "RESET" => match (toks.get(1).and_then(|t| qubit_ref(t)), toks.len()) {
                (Some(qubit), 2) => c.push(Instruction::ResetQubit { qubit }),
                (None, 2) => c.push(Instruction::ResetBlock { block: toks[1].to_string(), label: None }),
                (None, 3) => c.push(Instruction::ResetBlock {
                    block: toks[1].to_string(),
                    label: Some(parse_labels(toks[2]).map_err(sim)?),
                }),
                _ => return Err(err("bad RESET")),
            },
            "SEGMENT" => {
                if toks.len() != 3 {
                    return Err(err("expected SEGMENT <name> <published two-qubit gates>"));
                }
                c.push(Instruction::Segment {
                    name: toks[1].to_string(),
                    published_two_qubit_gates: toks[2].parse().map_err(|_| err("bad count"))?,
                });
            }
            "ENDSEGMENT" => c.push(Instruction::EndSegment),
            _ => {
                if let Some(g) = head.strip_prefix('T').and_then(GateName::parse) {
                    match (g.arity(), toks.len()) {
                        (1, 2) => c.push(Instruction::TransversalGate { gate: g, a: toks[1].to_string(), b: None }),
                        (2, 3) => c.push(Instruction::TransversalGate {
                            gate: g,
                            a: toks[1].to_string(),
                            b: Some(toks[2].to_string()),
                        }),
                        _ => return Err(err("wrong number of blocks")),
                    }
                } else if let Some(g) = GateName::parse(head) {
                    let targets = toks[1..]
                        .iter()
                        .map(|t| qubit_ref(t).ok_or_else(|| err("expected block[index]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    c.push(Instruction::Gate { gate: g, targets });
                } else {
                    return Err(err("unknown instruction"));
                }
            }
        }
    }
    c.validate()?;
    Ok(c)
}
