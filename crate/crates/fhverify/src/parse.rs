//! The line-oriented circuit description format.
//!
//! One directive per line; `#` starts a comment; blank lines are ignored.
//! Indices are decimal and zero-based.
//!
//! ```text
//! qubits <n>
//! input <bitstring of length n>
//! layer classical
//!   x <t>
//!   cnot <c> <t>
//!   toffoli <c1> <c2> <t>
//!   ctoffoli <c1> ... <ck> <t>
//! end
//! layer hadamard <q1> <q2> ...
//! layer qft <q1> <q2> ...
//! layer iqft <q1> <q2> ...
//! ```
//!
//! For QFT registers the first listed qubit is the most significant bit of
//! the register reading. The input state is part of the file; callers may
//! override it after parsing.

use std::fmt;

use thiserror::Error;

use crate::bits::BitString;
use crate::circuit::{KTransformCircuit, Layer};
use crate::classical::{ClassicalLayer, ReversibleGate};
use crate::error::Error as CircuitError;
use crate::transform::TransformLayer;

/// What went wrong while parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownDirective,
    IndexOutOfRange,
    DuplicateQubit,
    BadAlternation,
    MissingHeader,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::UnknownDirective => "unknown-directive",
            ParseErrorKind::IndexOutOfRange => "index-out-of-range",
            ParseErrorKind::DuplicateQubit => "duplicate-qubit",
            ParseErrorKind::BadAlternation => "bad-alternation",
            ParseErrorKind::MissingHeader => "missing-header",
        };
        f.write_str(name)
    }
}

/// A located parse failure. Every rejected input yields exactly one of
/// these, carrying the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self {
            line,
            kind,
            message: message.into(),
        }
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse::<usize>().map_err(|_| {
        ParseError::new(
            line,
            ParseErrorKind::Syntax,
            format!("expected a qubit index, got {token:?}"),
        )
    })
}

fn check_range(index: usize, n: usize, line: usize) -> Result<(), ParseError> {
    if index >= n {
        return Err(ParseError::new(
            line,
            ParseErrorKind::IndexOutOfRange,
            format!("qubit index {index} out of range for {n} qubits"),
        ));
    }
    Ok(())
}

fn gate_error(err: CircuitError, line: usize) -> ParseError {
    let kind = match err {
        CircuitError::DuplicateQubit { .. } | CircuitError::TargetInControls { .. } => {
            ParseErrorKind::DuplicateQubit
        }
        CircuitError::IndexOutOfRange { .. } => ParseErrorKind::IndexOutOfRange,
        _ => ParseErrorKind::Syntax,
    };
    ParseError::new(line, kind, err.to_string())
}

/// Parses a circuit description. Any transform count is accepted here; the
/// verifier refuses k > 2 itself.
pub fn parse_circuit(text: &str) -> Result<KTransformCircuit, ParseError> {
    let mut n: Option<usize> = None;
    let mut input: Option<BitString> = None;
    let mut layers: Vec<Layer> = Vec::new();
    let mut block: Option<(Vec<ReversibleGate>, usize)> = None;
    let mut line_no = 0usize;

    for raw in text.lines() {
        line_no += 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();

        if let Some((gates, _)) = block.as_mut() {
            let nq = n.expect("block implies header parsed");
            match tokens[0] {
                "end" => {
                    if tokens.len() != 1 {
                        return Err(ParseError::new(
                            line_no,
                            ParseErrorKind::Syntax,
                            "end takes no arguments",
                        ));
                    }
                    let (gates, _) = block.take().expect("in block");
                    layers.push(Layer::Classical(ClassicalLayer::new(gates)));
                }
                name @ ("x" | "cnot" | "toffoli" | "ctoffoli") => {
                    let args: Vec<usize> = tokens[1..]
                        .iter()
                        .map(|t| parse_index(t, line_no))
                        .collect::<Result<_, _>>()?;
                    let expected = match name {
                        "x" => 1,
                        "cnot" => 2,
                        "toffoli" => 3,
                        _ => args.len().max(2),
                    };
                    if args.len() != expected || (name == "ctoffoli" && args.len() < 2) {
                        return Err(ParseError::new(
                            line_no,
                            ParseErrorKind::Syntax,
                            format!("{name} takes {expected} indices, got {}", args.len()),
                        ));
                    }
                    for &index in &args {
                        check_range(index, nq, line_no)?;
                    }
                    let (controls, target) = args.split_at(args.len() - 1);
                    let gate = ReversibleGate::new(controls.to_vec(), target[0])
                        .map_err(|e| gate_error(e, line_no))?;
                    gates.push(gate);
                }
                "layer" | "qubits" | "input" => {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        format!("{:?} inside a classical layer; missing end", tokens[0]),
                    ));
                }
                other => {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::UnknownDirective,
                        format!("unknown gate {other:?}"),
                    ));
                }
            }
            continue;
        }

        match tokens[0] {
            "qubits" => {
                if n.is_some() {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "duplicate qubits directive",
                    ));
                }
                if input.is_some() || !layers.is_empty() {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "qubits must be the first directive",
                    ));
                }
                if tokens.len() != 2 {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "usage: qubits <n>",
                    ));
                }
                let count = parse_index(tokens[1], line_no)?;
                if count == 0 || count > crate::bits::MAX_QUBITS {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        format!("qubit count must be between 1 and 64, got {count}"),
                    ));
                }
                n = Some(count);
            }
            "input" => {
                let nq = n.ok_or_else(|| {
                    ParseError::new(
                        line_no,
                        ParseErrorKind::MissingHeader,
                        "qubits directive must appear before input",
                    )
                })?;
                if input.is_some() {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "duplicate input directive",
                    ));
                }
                if !layers.is_empty() {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "input must appear before any layer",
                    ));
                }
                if tokens.len() != 2 {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "usage: input <bitstring>",
                    ));
                }
                let parsed: BitString = tokens[1].parse().map_err(|e: CircuitError| {
                    ParseError::new(line_no, ParseErrorKind::Syntax, e.to_string())
                })?;
                if parsed.len() != nq {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        format!("input has {} bits, expected {nq}", parsed.len()),
                    ));
                }
                input = Some(parsed);
            }
            "layer" => {
                let nq = n.ok_or_else(|| {
                    ParseError::new(
                        line_no,
                        ParseErrorKind::MissingHeader,
                        "qubits directive must appear before layers",
                    )
                })?;
                if input.is_none() {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::MissingHeader,
                        "input directive must appear before layers",
                    ));
                }
                if tokens.len() < 2 {
                    return Err(ParseError::new(
                        line_no,
                        ParseErrorKind::Syntax,
                        "usage: layer <classical|hadamard|qft|iqft> ...",
                    ));
                }
                match tokens[1] {
                    "classical" => {
                        if tokens.len() != 2 {
                            return Err(ParseError::new(
                                line_no,
                                ParseErrorKind::Syntax,
                                "layer classical takes no arguments",
                            ));
                        }
                        block = Some((Vec::new(), line_no));
                    }
                    kind @ ("hadamard" | "qft" | "iqft") => {
                        let support: Vec<usize> = tokens[2..]
                            .iter()
                            .map(|t| parse_index(t, line_no))
                            .collect::<Result<_, _>>()?;
                        if support.is_empty() {
                            return Err(ParseError::new(
                                line_no,
                                ParseErrorKind::Syntax,
                                format!("layer {kind} needs at least one qubit"),
                            ));
                        }
                        for &index in &support {
                            check_range(index, nq, line_no)?;
                        }
                        let transform = match kind {
                            "hadamard" => TransformLayer::hadamard(support),
                            "qft" => TransformLayer::qft(support),
                            _ => TransformLayer::inverse_qft(support),
                        }
                        .map_err(|e| gate_error(e, line_no))?;
                        if matches!(layers.last(), Some(Layer::Transform(_))) {
                            return Err(ParseError::new(
                                line_no,
                                ParseErrorKind::BadAlternation,
                                "two transform layers in direct succession; \
                                 declare them as a single transform layer",
                            ));
                        }
                        layers.push(Layer::Transform(transform));
                    }
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            ParseErrorKind::UnknownDirective,
                            format!("unknown layer kind {other:?}"),
                        ));
                    }
                }
            }
            "end" => {
                return Err(ParseError::new(
                    line_no,
                    ParseErrorKind::Syntax,
                    "end outside a classical layer",
                ));
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    ParseErrorKind::UnknownDirective,
                    format!("unknown directive {other:?}"),
                ));
            }
        }
    }

    if let Some((_, start)) = block {
        return Err(ParseError::new(
            start,
            ParseErrorKind::Syntax,
            "classical layer is never closed with end",
        ));
    }
    let eof = line_no + 1;
    let n = n.ok_or_else(|| {
        ParseError::new(
            eof,
            ParseErrorKind::MissingHeader,
            "missing qubits directive",
        )
    })?;
    let input = input.ok_or_else(|| {
        ParseError::new(
            eof,
            ParseErrorKind::MissingHeader,
            "missing input directive",
        )
    })?;

    KTransformCircuit::new(n, input, layers).map_err(|e| match e {
        CircuitError::AdjacentTransforms => {
            ParseError::new(eof, ParseErrorKind::BadAlternation, e.to_string())
        }
        other => ParseError::new(eof, ParseErrorKind::Syntax, other.to_string()),
    })
}

fn render_gate(gate: &ReversibleGate, out: &mut String) {
    let name = match gate.controls().len() {
        0 => "x",
        1 => "cnot",
        2 => "toffoli",
        _ => "ctoffoli",
    };
    out.push_str("  ");
    out.push_str(name);
    for c in gate.controls() {
        out.push_str(&format!(" {c}"));
    }
    out.push_str(&format!(" {}\n", gate.target()));
}

/// Serializes a circuit back to the text format. Deterministic; empty
/// leading and trailing classical layers are omitted (normalization
/// reinserts them on parse). An empty classical layer *between* two
/// transform layers is written as an explicit empty block, since adjacent
/// transform lines would be rejected as ambiguous.
pub fn serialize_circuit(circuit: &KTransformCircuit) -> String {
    let mut out = String::new();
    out.push_str(&format!("qubits {}\n", circuit.n()));
    out.push_str(&format!("input {}\n", circuit.input()));
    let k = circuit.k();
    for i in 0..=k {
        let layer = circuit.classical_layer(i);
        let separates_transforms = i > 0 && i < k;
        if !layer.is_identity() || separates_transforms {
            out.push_str("layer classical\n");
            for gate in layer.gates() {
                render_gate(gate, &mut out);
            }
            out.push_str("end\n");
        }
        if i < k {
            let f = circuit.transform_layer(i);
            let name = match f.kind() {
                crate::transform::TransformKind::HadamardLayer => "hadamard",
                crate::transform::TransformKind::QftRegister => "qft",
                crate::transform::TransformKind::InverseQftRegister => "iqft",
            };
            out.push_str(&format!("layer {name}"));
            for q in f.support() {
                out.push_str(&format!(" {q}"));
            }
            out.push('\n');
        }
    }
    out
}

/// The Bernstein–Vazirani demonstration circuit over `hidden.len()` data
/// qubits plus one ancilla: deterministic outcome `hidden ‖ 1`.
pub fn bernstein_vazirani(hidden: &BitString) -> KTransformCircuit {
    let n = hidden.len() + 1;
    let ancilla = n - 1;
    let all: Vec<usize> = (0..n).collect();
    let oracle: Vec<ReversibleGate> = (0..hidden.len())
        .filter(|&q| hidden.get(q))
        .map(|q| ReversibleGate::cnot(q, ancilla).expect("distinct indices"))
        .collect();
    KTransformCircuit::new(
        n,
        BitString::zeros(n).expect("valid length"),
        vec![
            Layer::Classical(ClassicalLayer::new(vec![ReversibleGate::x(ancilla)])),
            Layer::Transform(TransformLayer::hadamard(all.clone()).expect("nonempty")),
            Layer::Classical(ClassicalLayer::new(oracle)),
            Layer::Transform(TransformLayer::hadamard(all).expect("nonempty")),
        ],
    )
    .expect("well-formed circuit")
}

#[cfg(test)]
mod tests {
    use super::*;

    const BV_FILE: &str = "\
qubits 4
input 0000
layer classical
  x 3
end
layer hadamard 0 1 2 3
layer classical
  cnot 0 3
  cnot 2 3
end
layer hadamard 0 1 2 3
";

    #[test]
    fn minimal_identity_circuit() {
        let circuit = parse_circuit("qubits 1\ninput 0\n").unwrap();
        assert_eq!(circuit.k(), 0);
        assert_eq!(circuit.n(), 1);
        assert!(circuit.classical_layer(0).is_identity());
    }

    #[test]
    fn bv_file_matches_hand_built_circuit() {
        let parsed = parse_circuit(BV_FILE).unwrap();
        assert_eq!(parsed.k(), 2);
        assert_eq!(parsed.n(), 4);
        let built = bernstein_vazirani(&"101".parse().unwrap());
        assert_eq!(parsed, built);
    }

    #[test]
    fn duplicate_support_qubit_is_located() {
        let err = parse_circuit("qubits 2\ninput 00\nlayer hadamard 0 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DuplicateQubit);
        assert_eq!(err.line, 3);
    }

    #[test]
    fn adjacent_transforms_are_bad_alternation() {
        let err =
            parse_circuit("qubits 2\ninput 00\nlayer hadamard 0\nlayer hadamard 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::BadAlternation);
        assert_eq!(err.line, 4);
    }

    #[test]
    fn missing_headers_are_reported() {
        let err = parse_circuit("layer hadamard 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingHeader);
        let err = parse_circuit("").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingHeader);
        let err = parse_circuit("qubits 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingHeader);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let circuit =
            parse_circuit("# a comment\n\nqubits 2   # trailing\ninput 01\n\n# done\n").unwrap();
        assert_eq!(circuit.input().to_string(), "01");
    }

    #[test]
    fn out_of_range_and_unknown_directives() {
        let err = parse_circuit("qubits 2\ninput 00\nlayer qft 0 5\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IndexOutOfRange);
        let err = parse_circuit("qubits 2\ninput 00\nmeasure 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownDirective);
        let err = parse_circuit("qubits 2\ninput 00\nlayer classical\n  h 0\nend\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownDirective);
        assert_eq!(err.line, 4);
    }

    #[test]
    fn unterminated_block_points_at_its_start() {
        let err = parse_circuit("qubits 2\ninput 00\nlayer classical\n  x 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert_eq!(err.line, 3);
    }

    #[test]
    fn round_trip_is_identical_and_deterministic() {
        let circuit = parse_circuit(BV_FILE).unwrap();
        let text = serialize_circuit(&circuit);
        assert_eq!(text, serialize_circuit(&circuit));
        let reparsed = parse_circuit(&text).unwrap();
        assert_eq!(reparsed, circuit);
    }

    #[test]
    fn empty_classical_layers_omitted_from_output() {
        let circuit = parse_circuit("qubits 1\ninput 0\nlayer hadamard 0\n").unwrap();
        let text = serialize_circuit(&circuit);
        assert_eq!(text, "qubits 1\ninput 0\nlayer hadamard 0\n");
    }

    #[test]
    fn empty_middle_layer_stays_as_separator() {
        let source =
            "qubits 2\ninput 00\nlayer hadamard 0\nlayer classical\nend\nlayer hadamard 1\n";
        let circuit = parse_circuit(source).unwrap();
        assert_eq!(circuit.k(), 2);
        let text = serialize_circuit(&circuit);
        assert_eq!(text, source);
        assert_eq!(parse_circuit(&text).unwrap(), circuit);
    }

    #[test]
    fn high_k_is_accepted_at_parse_time() {
        let circuit = parse_circuit(
            "qubits 1\ninput 0\nlayer hadamard 0\nlayer classical\nend\nlayer hadamard 0\n\
             layer classical\nend\nlayer hadamard 0\n",
        )
        .unwrap();
        assert_eq!(circuit.k(), 3);
    }
}
