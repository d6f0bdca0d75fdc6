import init, { sweep_links, rho_profile, symmetric_capacity } from "./pkg/diamond_wiretap_demo.js";

const COLORS = {
  ub1: "#1f4e9c", lb1: "#6d9be0", ub2: "#9c1f1f", lb2: "#e07b6d",
  nosecrecy_ub: "#333", nosecrecy_lb: "#999",
  lb1_df: "#6d9be0", lb1_pdfm: "#1f4e9c", lb2_df: "#e0b36d", lb2_pdfdfm: "#e07b6d", lb2_pdfpdfm: "#9c1f1f",
};
const SWEEP_SERIES = ["ub1", "lb1", "ub2", "lb2", "nosecrecy_ub"];

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const rprime = () => {
  const v = $("rprime").value.trim();
  return v === "" || v.toLowerCase() === "inf" ? Infinity : Number(v);
};

function guard(fn) {
  return () => {
    $("status").textContent = "";
    try {
      fn();
    } catch (e) {
      $("status").textContent = String(e);
    }
  };
}

// Plain line chart; series values may contain nulls (gaps).
function plot(canvas, xs, series, xLabel) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 48, r: 12, t: 10, b: 32 };
  ctx.clearRect(0, 0, w, h);

  const finite = series.flatMap((s) => s.values).filter((v) => v !== null && Number.isFinite(v));
  const yMax = Math.max(1e-9, ...finite) * 1.05;
  const [x0, x1] = [xs[0], xs[xs.length - 1] === xs[0] ? xs[0] + 1 : xs[xs.length - 1]];
  const X = (x) => pad.l + ((x - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const Y = (y) => h - pad.b - (y / yMax) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#aaa";
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, h - pad.b);
  ctx.lineTo(w - pad.r, h - pad.b);
  ctx.stroke();
  for (let i = 0; i <= 5; i++) {
    const y = (yMax * i) / 5;
    ctx.fillText(y.toFixed(2), 4, Y(y) + 4);
    const x = x0 + ((x1 - x0) * i) / 5;
    ctx.fillText(x.toFixed(2), X(x) - 10, h - pad.b + 14);
  }
  ctx.fillText(xLabel, w - pad.r - 30, h - 4);

  for (const s of series) {
    ctx.strokeStyle = COLORS[s.name] || "#000";
    ctx.lineWidth = s.name.startsWith("ub") ? 2 : 1.5;
    ctx.setLineDash(s.name.startsWith("nosecrecy") ? [5, 4] : []);
    ctx.beginPath();
    let pen = false;
    xs.forEach((x, i) => {
      const v = s.values[i];
      if (v === null || !Number.isFinite(v)) {
        pen = false;
        return;
      }
      pen ? ctx.lineTo(X(x), Y(v)) : ctx.moveTo(X(x), Y(v));
      pen = true;
    });
    ctx.stroke();
    if (s.mark) {
      ctx.fillStyle = ctx.strokeStyle;
      ctx.beginPath();
      ctx.arc(X(s.mark[0]), Y(s.mark[1]), 3.5, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
  ctx.setLineDash([]);
}

function legend(el, names) {
  el.innerHTML = names.map((n) => `<span><i style="background:${COLORS[n]}"></i>${n}</span>`).join("");
}

function runSweep() {
  const out = JSON.parse(
    sweep_links(num("p1"), num("p2"), num("g"), num("cfrom"), num("cto"), num("steps"), num("offset"), rprime()),
  );
  const series = out.columns.filter((c) => SWEEP_SERIES.includes(c.name));
  plot($("sweep"), out.c, series, "C1");
  legend($("sweep-legend"), series.map((s) => s.name));
}

function runProfile() {
  const out = JSON.parse(rho_profile(num("p1"), num("p2"), num("c1"), num("c2"), num("g"), rprime(), 801));
  const series = out.curves.map((c) => ({ ...c, mark: [c.best_rho, c.best_rate] }));
  plot($("profile"), out.rho, series, "ρ");
  legend($("profile-legend"), series.map((s) => s.name));
}

function runCapacity() {
  const v = JSON.parse(symmetric_capacity(num("sp"), num("sc"), num("g")));
  const f = (x) => (x === null ? "—" : x.toFixed(6));
  $("capacity").textContent = [
    `window      ${f(v.window[0])} ≤ C ≤ ${f(v.window[1])}`,
    `applies     ${v.applies}`,
    `ρ′          ${f(v.rho_prime)}`,
    `capacity    ${f(v.capacity)}`,
    `upper       ${f(v.upper)}`,
    `lower       ${f(v.lower)}`,
    `auxiliary   ${v.auxiliary}`,
    ...v.diagnostics,
  ].join("\n");
}

await init();
$("run-sweep").onclick = guard(runSweep);
$("run-profile").onclick = guard(runProfile);
$("run-capacity").onclick = guard(runCapacity);
guard(runSweep)();
guard(runProfile)();
guard(runCapacity)();
