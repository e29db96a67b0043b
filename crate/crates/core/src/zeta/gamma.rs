//! Complex Gamma function by the Lanczos approximation (`g = 607/128`).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scalar::{c, C64};

const G: f64 = 607.0 / 128.0;
const COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

fn check_pole(z: C64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::PoleOfGamma { z: format!("{z}") });
    }
    Ok(())
}

/// `ln Γ(z)` on the principal branch of the log of the Lanczos sum.
pub fn ln_gamma_complex(z: C64) -> Result<C64> {
    check_pole(z)?;
    if z.re < 0.5 {
        // reflection: Γ(z)Γ(1−z) = π / sin(πz)
        let s = (c(PI) * z).sin();
        return Ok(c(PI).ln() - s.ln() - ln_gamma_complex(c(1.0) - z)?);
    }
    let x = z - 1.0;
    let mut ser = c(COEF[0]);
    for (k, &ck) in COEF.iter().enumerate().skip(1) {
        ser += ck / (x + k as f64);
    }
    let t = x + G + 0.5;
    Ok(c((2.0 * PI).sqrt()).ln() + (x + 0.5) * t.ln() - t + ser.ln())
}

pub fn gamma_complex(z: C64) -> Result<C64> {
    check_pole(z)?;
    if z.re < 0.5 {
        let s = (c(PI) * z).sin();
        return Ok(c(PI) / (s * gamma_complex(c(1.0) - z)?));
    }
    Ok(ln_gamma_complex(z)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert!((gamma_complex(c(1.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma_complex(c(0.5)).unwrap() - PI.sqrt()).norm() < 1e-14);
        assert!((gamma_complex(c(5.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((gamma_complex(c(-0.5)).unwrap() + 2.0 * PI.sqrt()).norm() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(gamma_complex(c(-3.0)), Err(Error::PoleOfGamma { .. })));
        assert!(matches!(gamma_complex(c(0.0)), Err(Error::PoleOfGamma { .. })));
    }

    #[test]
    fn functional_equation_on_a_strip() {
        for k in 0..40 {
            let z = C64::new(-3.7 + 0.31 * k as f64, 2.0 - 0.13 * k as f64);
            let r = gamma_complex(z + 1.0).unwrap() / (z * gamma_complex(z).unwrap());
            assert!((r - 1.0).norm() < 1e-12, "{z}: {r}");
        }
    }
}
