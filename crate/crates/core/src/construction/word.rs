use crate::error::{Error, Result};

/// Parses a free-monoid word such as `x1^2 x2^3`, `x2x2x2` or `x1*x3^4`
/// into `(generator, exponent)` pairs.
pub fn parse_word(s: &str) -> Result<Vec<(usize, u64)>> {
    let bad = |why: &str| Error::Parse(format!("invalid word {s:?}: {why}"));
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let digits = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    while i < chars.len() {
        match chars[i] {
            c if c.is_whitespace() || c == '*' => i += 1,
            'x' => {
                i += 1;
                let g = digits(&mut i).ok_or_else(|| bad("missing generator index"))?;
                let mut e = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    e = digits(&mut i).ok_or_else(|| bad("missing exponent"))?;
                }
                if g == 0 {
                    return Err(bad("generators are numbered from 1"));
                }
                out.push((g as usize, e));
            }
            c => return Err(bad(&format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// `m_1 + … + m_s` for `w = x_{i_1}^{m_1} ⋯ x_{i_s}^{m_s}`: substituting the
/// same polynomial for every generator turns `w` into the power word of this
/// total order.
pub fn word_total_exponent(word: &[(usize, u64)]) -> Result<u64> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut total = 0u64;
    for &(_, m) in word {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "word exponents must be positive".into(),
            ));
        }
        total = total
            .checked_add(m)
            .ok_or_else(|| Error::InvalidArgument("word exponent overflow".into()))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalars::{rat, Rationals};

    #[test]
    fn totals() {
        assert_eq!(
            word_total_exponent(&parse_word("x1^2 x2^3").unwrap()),
            Ok(5)
        );
        assert_eq!(word_total_exponent(&parse_word("x1").unwrap()), Ok(1));
        assert_eq!(word_total_exponent(&parse_word("x2x2x2").unwrap()), Ok(3));
        assert_eq!(word_total_exponent(&parse_word("x1*x3^4").unwrap()), Ok(5));
        assert_eq!(
            word_total_exponent(&parse_word("  ").unwrap()),
            Err(Error::EmptyWord)
        );
        assert!(parse_word("y1").is_err());
        assert!(parse_word("x^2").is_err());
        assert!(word_total_exponent(&[(1, 0)]).is_err());
    }

    #[test]
    fn diagonal_substitution_is_an_iterate() {
        // w(P, P) for w = x1^2 x2^3 composes P five times.
        let p = Poly::new(Rationals, vec![rat(1, 2), rat(0, 1), rat(1, 1)]);
        let word = parse_word("x1^2 x2^3").unwrap();
        let mut acc = Poly::x(&Rationals);
        for &(_, m) in word.iter().rev() {
            acc = p.iterate(m as usize).compose(&acc);
        }
        assert_eq!(acc, p.iterate(word_total_exponent(&word).unwrap() as usize));
    }
}
