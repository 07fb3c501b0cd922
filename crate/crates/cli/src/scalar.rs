use artinian::exactla::{Field, PrimeField, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

/// JSON codec for field elements: ℚ as reduced `"a/b"` strings, 𝔽_p as
/// integers in `[0, p)`.
pub trait JsonScalar: Field {
    fn field_to_json(&self) -> Value;
    fn scalar_to_json(&self, x: &Self::Elem) -> Value;
    fn scalar_from_json(&self, v: &Value) -> Result<Self::Elem, String>;
}

impl JsonScalar for Rationals {
    fn field_to_json(&self) -> Value {
        json!({ "kind": "Q" })
    }

    fn scalar_to_json(&self, x: &BigRational) -> Value {
        Value::String(self.format(x))
    }

    fn scalar_from_json(&self, v: &Value) -> Result<BigRational, String> {
        match v {
            Value::String(s) => self.parse(s).map_err(|e| e.to_string()),
            Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(BigInt::from(i)))
                .ok_or_else(|| format!("{n} is not an integer; write rationals as \"a/b\"")),
            other => Err(format!("expected a rational string, found {other}")),
        }
    }
}

impl JsonScalar for PrimeField {
    fn field_to_json(&self) -> Value {
        json!({ "kind": "Fp", "p": self.modulus() })
    }

    fn scalar_to_json(&self, x: &u64) -> Value {
        json!(x)
    }

    fn scalar_from_json(&self, v: &Value) -> Result<u64, String> {
        let n = v
            .as_u64()
            .ok_or_else(|| format!("expected an integer in [0, {}), found {v}", self.modulus()))?;
        if n >= self.modulus() {
            return Err(format!("{n} is not reduced modulo {}", self.modulus()));
        }
        Ok(n)
    }
}
