//! WebAssembly bindings for the browser explorer in `www/`.
//!
//! Every export takes plain numbers and returns a JSON string, so the page
//! needs no generated TypeScript glue beyond `JSON.parse`. The `api` module
//! holds the same operations with `String` errors for native testing.

use wasm_bindgen::prelude::*;

pub mod api {
    use diamond_wiretap::analysis::{capacity_window, symmetric_capacity};
    use diamond_wiretap::scenario_one::{lower_bound_df1, lower_bound_pdfm1};
    use diamond_wiretap::scenario_two::{lower_bound_df2, lower_bound_pdfdfm2, lower_bound_pdfpdfm2};
    use diamond_wiretap::sweep::{FullEvaluation, Scenario, Sweep, SweepParam, SweepRow};
    use diamond_wiretap::{ChannelParams, RandomnessBudget, RateValue, Result};
    use serde::Serialize;

    /// Browsers hand over `Infinity` for "no limit".
    fn budget(rprime: f64) -> std::result::Result<RandomnessBudget, String> {
        if rprime == f64::INFINITY {
            Ok(RandomnessBudget::Unbounded)
        } else {
            RandomnessBudget::finite(rprime).map_err(|e| e.to_string())
        }
    }

    fn to_json<T: Serialize>(v: &T) -> String {
        serde_json::to_string(v).expect("demo payloads serialize")
    }

    #[derive(Serialize)]
    struct Column {
        name: &'static str,
        values: Vec<f64>,
    }

    #[derive(Serialize)]
    struct SweepPayload {
        c: Vec<f64>,
        columns: Vec<Column>,
    }

    /// Every bound along a grid of link capacities, as columns.
    #[allow(clippy::too_many_arguments)]
    pub fn sweep_links(
        p1: f64,
        p2: f64,
        g: f64,
        from: f64,
        to: f64,
        steps: usize,
        c2_offset: f64,
        rprime: f64,
    ) -> std::result::Result<String, String> {
        if steps == 0 || steps > 2000 {
            return Err("steps must lie in 1..=2000".into());
        }
        let budget = budget(rprime)?;
        let base = ChannelParams::new(p1, p2, from, from + c2_offset, g).map_err(|e| e.to_string())?;
        let sweep = Sweep {
            param: SweepParam::C,
            from,
            to,
            steps,
            base,
            c2_offset,
            budget,
        };
        // Sequential on purpose: the page runs on a single thread anyway.
        let rows: Vec<SweepRow> = sweep
            .grid()
            .into_iter()
            .map(|c| {
                let p = sweep.params_at(c)?;
                Ok(SweepRow::from_evaluation(c, &FullEvaluation::new(&p, budget)))
            })
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;

        let names: Vec<&'static str> = rows[0]
            .columns_for(Scenario::Both)
            .into_iter()
            .map(|(n, _)| n)
            .collect();
        let mut columns: Vec<Column> = names
            .iter()
            .map(|&name| Column {
                name,
                values: Vec::new(),
            })
            .collect();
        for r in &rows {
            for (col, (_, v)) in columns.iter_mut().zip(r.columns_for(Scenario::Both)) {
                col.values.push(v);
            }
        }
        let c = columns.remove(0).values;
        Ok(to_json(&SweepPayload { c, columns }))
    }

    #[derive(Serialize)]
    struct Curve {
        name: &'static str,
        /// `None` where the scheme is undefined or has no positive rate.
        values: Vec<Option<f64>>,
        best_rho: f64,
        best_rate: f64,
    }

    #[derive(Serialize)]
    struct ProfilePayload {
        rho: Vec<f64>,
        curves: Vec<Curve>,
    }

    /// Each lower bound as a function of the input correlation, with the
    /// optimizer's choice marked.
    #[allow(clippy::too_many_arguments)]
    pub fn rho_profile(
        p1: f64,
        p2: f64,
        c1: f64,
        c2: f64,
        g: f64,
        rprime: f64,
        points: usize,
    ) -> std::result::Result<String, String> {
        if !(2..=4000).contains(&points) {
            return Err("points must lie in 2..=4000".into());
        }
        let budget = budget(rprime)?;
        let p = ChannelParams::new(p1, p2, c1, c2, g).map_err(|e| e.to_string())?;
        let e = FullEvaluation::new(&p, budget);
        let rho: Vec<f64> = (0..points)
            .map(|i| -1.0 + 2.0 * i as f64 / (points - 1) as f64)
            .collect();

        type PerRho = fn(&ChannelParams, RandomnessBudget, f64) -> Result<RateValue>;
        let schemes: [(&'static str, PerRho, &diamond_wiretap::BoundReport); 5] = [
            ("lb1_df", lower_bound_df1, &e.scenario_one.lower_df),
            ("lb1_pdfm", lower_bound_pdfm1, &e.scenario_one.lower_pdfm),
            ("lb2_df", lower_bound_df2, &e.scenario_two.lower_df),
            ("lb2_pdfdfm", lower_bound_pdfdfm2, &e.scenario_two.lower_pdfdfm),
            ("lb2_pdfpdfm", lower_bound_pdfpdfm2, &e.scenario_two.lower_pdfpdfm),
        ];
        let curves = schemes
            .into_iter()
            .map(|(name, f, best)| Curve {
                name,
                values: rho
                    .iter()
                    .map(|&r| {
                        f(&p, budget, r)
                            .ok()
                            .filter(|v| v.is_finite())
                            .map(RateValue::value)
                    })
                    .collect(),
                best_rho: best.rho,
                best_rate: best.rate,
            })
            .collect();
        Ok(to_json(&ProfilePayload { rho, curves }))
    }

    #[derive(Serialize)]
    struct CapacityPayload {
        window: (f64, f64),
        applies: bool,
        rho_prime: Option<f64>,
        capacity: Option<f64>,
        upper: f64,
        lower: f64,
        auxiliary: String,
        diagnostics: Vec<String>,
    }

    /// Whether the scenario-2 bounds meet for a symmetric channel.
    pub fn symmetric(p: f64, c: f64, g: f64) -> std::result::Result<String, String> {
        let params = ChannelParams::symmetric(p, c, g).map_err(|e| e.to_string())?;
        let v = symmetric_capacity(&params, RandomnessBudget::Unbounded).map_err(|e| e.to_string())?;
        let window = capacity_window(p).map_err(|e| e.to_string())?;
        Ok(to_json(&CapacityPayload {
            window,
            applies: v.applies,
            rho_prime: v.rho_prime,
            capacity: v.capacity.map(RateValue::value),
            upper: v.upper,
            lower: v.lower,
            auxiliary: format!("{:?}", v.auxiliary),
            diagnostics: v.diagnostics,
        }))
    }
}

#[allow(clippy::too_many_arguments)]
#[wasm_bindgen]
pub fn sweep_links(
    p1: f64,
    p2: f64,
    g: f64,
    from: f64,
    to: f64,
    steps: usize,
    c2_offset: f64,
    rprime: f64,
) -> Result<String, JsValue> {
    api::sweep_links(p1, p2, g, from, to, steps, c2_offset, rprime).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn rho_profile(
    p1: f64,
    p2: f64,
    c1: f64,
    c2: f64,
    g: f64,
    rprime: f64,
    points: usize,
) -> Result<String, JsValue> {
    api::rho_profile(p1, p2, c1, c2, g, rprime, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn symmetric_capacity(p: f64, c: f64, g: f64) -> Result<String, JsValue> {
    api::symmetric(p, c, g).map_err(|e| JsValue::from_str(&e))
}
