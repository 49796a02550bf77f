use serde::{Deserialize, Serialize};

use super::params::LerchParams;
use crate::error::{Error, Result};
use crate::mp::parse::{format_decimal, parse_real};
use crate::mp::CNum;

/// A stored reference value; numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerchFixture {
    pub lambda: String,
    pub a_re: String,
    pub a_im: String,
    pub s_re: String,
    pub s_im: String,
    #[serde(rename = "L_re")]
    pub l_re: String,
    #[serde(rename = "L_im")]
    pub l_im: String,
    pub digits: u32,
}

impl LerchFixture {
    pub fn new(p: &LerchParams, value: &CNum, digits: u32) -> Self {
        let d = digits as usize + 5;
        // λ is written at the value's precision so fractions like 2/3 survive.
        LerchFixture {
            lambda: format_decimal(p.lambda(), d),
            a_re: format_decimal(&p.a().re, d),
            a_im: format_decimal(&p.a().im, d),
            s_re: format_decimal(&p.s().re, d),
            s_im: format_decimal(&p.s().im, d),
            l_re: format_decimal(&value.re, d),
            l_im: format_decimal(&value.im, d),
            digits,
        }
    }

    pub fn params(&self, prec: u32) -> Result<LerchParams> {
        LerchParams::parse_cartesian(&self.lambda, &self.a_re, &self.a_im, &self.s_re, &self.s_im, prec)
    }

    pub fn value(&self, prec: u32) -> Result<CNum> {
        Ok(CNum::new(parse_real(&self.l_re, prec)?, parse_real(&self.l_im, prec)?))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::domain(format!("bad fixture: {e}")))
    }

    pub fn list_from_json(text: &str) -> Result<Vec<Self>> {
        serde_json::from_str(text).map_err(|e| Error::domain(format!("bad fixture list: {e}")))
    }
}
