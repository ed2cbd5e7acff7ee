//! graph6 and sparse6 codecs.
//!
//! Both formats pack bits into printable bytes `63..=126`, six bits each,
//! most significant first. graph6 stores the upper triangle of the adjacency
//! matrix column by column; sparse6 stores an edge list with a running vertex
//! counter and is supported for reading only.

use super::FormatError;
use crate::graph::Graph;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";
const SPARSE6_HEADER: &[u8] = b">>sparse6<<";
const MAX_ORDER: usize = (1 << 36) - 1;

fn strip_line(bytes: &[u8]) -> &[u8] {
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r' | b' ' | b'\t') {
        end -= 1;
    }
    let mut start = 0;
    while start < end && matches!(bytes[start], b' ' | b'\t') {
        start += 1;
    }
    &bytes[start..end]
}

fn sextet(byte: u8, at: usize) -> Result<u64, FormatError> {
    if (63..=126).contains(&byte) {
        Ok(u64::from(byte - 63))
    } else {
        Err(FormatError::InvalidByte { byte, offset: at })
    }
}

/// Decodes the order prefix `N(n)`; returns `(n, bytes consumed)`.
fn decode_order(bytes: &[u8], base: usize) -> Result<(usize, usize), FormatError> {
    let first = *bytes.first().ok_or(FormatError::Truncated)?;
    if first != 126 {
        return Ok((sextet(first, base)? as usize, 1));
    }
    let (groups, skip) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    if bytes.len() < skip + groups {
        return Err(FormatError::Truncated);
    }
    let mut n: u64 = 0;
    for i in 0..groups {
        n = (n << 6) | sextet(bytes[skip + i], base + skip + i)?;
    }
    let n = n as usize;
    // the long forms must not encode orders that fit a shorter form
    let minimal = if groups == 3 { n >= 63 } else { n >= 258_048 };
    if !minimal {
        return Err(FormatError::HeaderMismatch(format!(
            "order {n} encoded in a non-minimal {}-byte prefix",
            skip + groups
        )));
    }
    Ok((n, skip + groups))
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    assert!(n <= MAX_ORDER, "graph6 supports orders below 2^36");
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Parses one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &[u8]) -> Result<Graph, FormatError> {
    let mut body = strip_line(text);
    if body.starts_with(GRAPH6_HEADER) {
        body = &body[GRAPH6_HEADER.len()..];
    }
    if body.first() == Some(&b':') || body.first() == Some(&b';') {
        return Err(FormatError::HeaderMismatch(
            "input is sparse6, not graph6".into(),
        ));
    }
    let offset = text.len() - strip_line(text).len();
    let (n, used) = decode_order(body, offset)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let data = &body[used..];
    if data.len() < need {
        return Err(FormatError::Truncated);
    }
    if data.len() > need {
        return Err(FormatError::TrailingData(data.len() - need));
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = sextet(data[k / 6], offset + used + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(u, v).expect("graph6 bits describe a simple graph");
            }
            k += 1;
        }
    }
    // padding bits must be zero
    if bits % 6 != 0 {
        let last = sextet(data[need - 1], offset + used + need - 1)?;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(FormatError::HeaderMismatch("non-zero graph6 padding".into()));
        }
    }
    Ok(g)
}

/// Encodes `g` in its current vertex order (no canonical relabelling).
pub fn emit_graph6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + n * n / 12);
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

pub fn emit_graph6_string(g: &Graph) -> String {
    String::from_utf8(emit_graph6(g)).expect("graph6 is printable ASCII")
}

/// Parses one sparse6 line (leading `:`; optional `>>sparse6<<` header).
pub fn parse_sparse6(text: &[u8]) -> Result<Graph, FormatError> {
    let mut body = strip_line(text);
    if body.starts_with(SPARSE6_HEADER) {
        body = &body[SPARSE6_HEADER.len()..];
    }
    match body.first() {
        Some(b':') => body = &body[1..],
        Some(b';') => {
            return Err(FormatError::HeaderMismatch(
                "incremental sparse6 is not supported".into(),
            ))
        }
        _ => return Err(FormatError::HeaderMismatch("sparse6 must start with ':'".into())),
    }
    let (n, used) = decode_order(body, 1)?;
    if n == 0 {
        return Err(FormatError::HeaderMismatch("sparse6 order must be at least 1".into()));
    }
    let mut k = 0usize;
    while (1usize << k) < n {
        k += 1;
    }
    let data = &body[used..];
    let mut bits = Vec::with_capacity(data.len() * 6);
    for (i, &b) in data.iter().enumerate() {
        let s = sextet(b, 1 + used + i)?;
        for shift in (0..6).rev() {
            bits.push((s >> shift) & 1 == 1);
        }
    }
    let mut g = Graph::empty(n);
    let mut pos = 0usize;
    let mut v = 0usize;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos];
        let mut x = 0usize;
        for i in 0..k {
            x = (x << 1) | usize::from(bits[pos + 1 + i]);
        }
        pos += 1 + k;
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x < v {
            g.insert_edge(x, v)
                .map_err(|_| FormatError::NotSimple(format!("repeated edge {x}-{v}")))?;
        } else {
            return Err(FormatError::NotSimple(format!("loop at vertex {v}")));
        }
    }
    Ok(g)
}

/// Dispatches on the leading byte: `:` means sparse6, anything else graph6.
pub fn parse_auto(text: &[u8]) -> Result<Graph, FormatError> {
    let body = strip_line(text);
    if body.starts_with(b":") || body.starts_with(SPARSE6_HEADER) {
        parse_sparse6(text)
    } else {
        parse_graph6(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    // Independent reference packer: writes the bit string first, then groups.
    fn reference_graph6(g: &Graph) -> String {
        let n = g.order();
        let mut bits = String::new();
        for v in 1..n {
            for u in 0..v {
                bits.push(if g.has_edge(u, v) { '1' } else { '0' });
            }
        }
        while bits.len() % 6 != 0 {
            bits.push('0');
        }
        let mut s = String::new();
        assert!(n <= 62);
        s.push((n as u8 + 63) as char);
        for chunk in bits.as_bytes().chunks(6) {
            let val = u8::from_str_radix(std::str::from_utf8(chunk).unwrap(), 2).unwrap();
            s.push((val + 63) as char);
        }
        s
    }

    #[test]
    fn k4_is_c_tilde() {
        let k4 = named::complete(4);
        assert_eq!(reference_graph6(&k4), "C~");
        assert_eq!(emit_graph6_string(&k4), "C~");
        let g = parse_graph6(b"C~").unwrap();
        assert_eq!((g.order(), g.size()), (4, 6));
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6(b"@").unwrap();
        assert_eq!((g.order(), g.size()), (1, 0));
        assert_eq!(emit_graph6_string(&g), "@");
    }

    #[test]
    fn five_vertex_example() {
        // a-c, a-e, b-d, d-e on vertices a..e
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6_string(&g), "DQc");
        assert_eq!(reference_graph6(&g), "DQc");
        assert_eq!(parse_graph6(b"DQc\n").unwrap(), g);
    }

    #[test]
    fn petersen_matches_reference_packer() {
        let p = named::petersen();
        assert_eq!(emit_graph6_string(&p), reference_graph6(&p));
    }

    #[test]
    fn long_order_prefix() {
        let g = named::cycle(100);
        let s = emit_graph6(&g);
        assert_eq!(&s[..4], &[126, 63, 64, 63 + 36]);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn header_and_errors() {
        assert_eq!(parse_graph6(b">>graph6<<C~").unwrap().size(), 6);
        assert_eq!(parse_graph6(b"C"), Err(FormatError::Truncated));
        assert_eq!(parse_graph6(b""), Err(FormatError::Truncated));
        assert!(matches!(parse_graph6(b"C~~"), Err(FormatError::TrailingData(1))));
        assert!(matches!(
            parse_graph6(b"C\x21"),
            Err(FormatError::InvalidByte { byte: 0x21, .. })
        ));
        assert_eq!(parse_graph6(b"?").unwrap().order(), 0);
        assert_eq!(emit_graph6_string(&Graph::empty(0)), "?");
        // triangle with a padding bit set
        assert!(parse_graph6(b"B~").is_err());
        assert_eq!(parse_graph6(b"Bw").unwrap().size(), 3);
    }

    #[test]
    fn truncations_are_rejected() {
        let s = emit_graph6(&named::wiener_araya());
        for cut in 0..s.len() {
            assert!(parse_graph6(&s[..cut]).is_err(), "prefix of length {cut} accepted");
        }
    }

    #[test]
    fn sparse6_examples() {
        // the example from the format description: n=7, edges 0-1 0-2 1-2 5-6
        let g = parse_sparse6(b":Fa@x^").unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (5, 6)]);
        assert!(parse_auto(b":Fa@x^").is_ok());
        assert!(parse_sparse6(b";Fa@x^").is_err());
        assert!(parse_sparse6(b"Fa@x^").is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=64).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let text = emit_graph6(&g);
            let back = parse_graph6(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(emit_graph6(&back), text);
        }
    }
}
