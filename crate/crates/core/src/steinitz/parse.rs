use super::{is_prime, Exponent, SteinitzNumber};
use crate::text::{ParseError, Scanner};

fn exponent(sc: &mut Scanner<'_>) -> Result<Exponent, ParseError> {
    if sc.eat_keyword("inf") {
        Ok(Exponent::Inf)
    } else {
        Ok(Exponent::Finite(sc.natural()?))
    }
}

/// `TERM ("*" TERM)* ["default" EXP]`, `TERM := PRIME "^" EXP | PRIME`.
/// A lone `1` denotes the empty product.
pub(super) fn parse_literal(
    src: &str,
    line: usize,
    column: usize,
) -> Result<SteinitzNumber, ParseError> {
    let mut sc = Scanner::new(src, line, column);
    let mut terms: Vec<(u64, Exponent)> = Vec::new();
    let mut default = Exponent::ZERO;

    if sc.at_end() {
        return Err(sc.error("empty Steinitz literal"));
    }
    if !sc.eat_keyword("default") {
        let start = sc.pos();
        let first = sc.natural()?;
        if first == 1 && !matches!(sc.peek(), Some('^') | Some('*')) {
            // the empty product
        } else {
            let mut base = first;
            let mut base_pos = start;
            loop {
                if !is_prime(base) {
                    return Err(sc.error_at(base_pos, format!("base {base} is not prime")));
                }
                let e = if sc.eat('^') {
                    exponent(&mut sc)?
                } else {
                    Exponent::Finite(1)
                };
                match terms.iter_mut().find(|(p, _)| *p == base) {
                    Some(entry) => entry.1 = entry.1.add(e),
                    None => terms.push((base, e)),
                }
                if !sc.eat('*') {
                    break;
                }
                sc.skip_ws();
                base_pos = sc.pos();
                base = sc.natural()?;
            }
        }
        if sc.eat_keyword("default") {
            default = exponent(&mut sc)?;
        }
    } else {
        default = exponent(&mut sc)?;
    }
    sc.finish()?;
    Ok(SteinitzNumber::from_parts(default, terms).expect("bases checked prime"))
}
