import init, { sweep_series, reduced_matrix, discord_landscape } from "./pkg/corrflow_web.js";

const $ = (id) => document.getElementById(id);
const SERIES = [
  ["total", "#222"],
  ["classical_K", "#1f77b4"],
  ["quantum_Q", "#d62728"],
  ["discord_D", "#ff7f0e"],
  ["concurrence", "#2ca02c"],
];

function params() {
  return {
    scenario: $("scenario").value,
    pair: $("pair").value,
    a: Number($("a").value),
    p: Number($("p").value),
  };
}

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

function drawSweep() {
  const { scenario, pair, a } = params();
  const rows = JSON.parse(sweep_series(scenario, a, pair, Number($("steps").value), 16));
  const c = $("sweep");
  const g = c.getContext("2d");
  const pad = 36;
  const w = c.width - 2 * pad;
  const h = c.height - 2 * pad;
  const top = Math.max(1, ...rows.flatMap((r) => SERIES.map(([k]) => r[k])));
  g.clearRect(0, 0, c.width, c.height);
  g.strokeStyle = "#999";
  g.strokeRect(pad, pad, w, h);
  g.fillStyle = "#555";
  g.fillText("0", pad - 10, pad + h + 12);
  g.fillText("p = 1", pad + w - 20, pad + h + 14);
  g.fillText(top.toFixed(2), 4, pad + 4);
  for (const [key, color] of SERIES) {
    g.strokeStyle = color;
    g.beginPath();
    rows.forEach((r, i) => {
      const x = pad + r.p * w;
      const y = pad + h - (r[key] / top) * h;
      if (i === 0) g.moveTo(x, y);
      else g.lineTo(x, y);
    });
    g.stroke();
  }
  const x = pad + params().p * w;
  g.strokeStyle = "#bbb";
  g.setLineDash([4, 4]);
  g.beginPath();
  g.moveTo(x, pad);
  g.lineTo(x, pad + h);
  g.stroke();
  g.setLineDash([]);
  $("legend").innerHTML = SERIES.map(([k, col]) => `<span style="color:${col}">■ ${k}</span>`).join("");
}

function fillTable(el, m, other) {
  el.innerHTML = "";
  if (!m) {
    el.innerHTML = "<tr><td>none for this pair</td></tr>";
    return;
  }
  m.forEach((row, i) => {
    const tr = el.insertRow();
    row.forEach(([re, im], j) => {
      const td = tr.insertCell();
      td.textContent = Math.abs(im) > 1e-12 ? `${re.toFixed(4)}${im >= 0 ? "+" : ""}${im.toFixed(4)}i` : re.toFixed(4);
      if (other) {
        const [ore, oim] = other[i][j];
        if (Math.hypot(re - ore, im - oim) > 1e-9) td.className = "bad";
      }
    });
  });
}

function showMatrix() {
  const { scenario, pair, a, p } = params();
  const v = JSON.parse(reduced_matrix(scenario, pair, a, p));
  fillTable($("numeric"), v.numeric);
  fillTable($("printed"), v.printed, v.numeric);
  $("matrix-info").textContent =
    v.printed === null
      ? ""
      : `closed-form trace ${v.printed_trace.toFixed(6)}, ${v.printed_valid ? "valid" : "not a density matrix"}, ` +
        `max |difference| ${v.max_abs_dev.toExponential(2)}`;
}

function drawLandscape() {
  const { scenario, pair, a, p } = params();
  const v = JSON.parse(discord_landscape(scenario, pair, a, p, 48));
  const c = $("landscape");
  const g = c.getContext("2d");
  const cw = c.width / v.n;
  const ch = c.height / v.n;
  const lo = Math.min(...v.values.flat());
  const span = Math.max(v.max - lo, 1e-12);
  v.values.forEach((row, i) =>
    row.forEach((val, j) => {
      const t = (val - lo) / span;
      g.fillStyle = `rgb(${Math.round(255 * t)}, ${Math.round(80 + 120 * t)}, ${Math.round(255 * (1 - t))})`;
      g.fillRect(j * cw, i * ch, cw + 1, ch + 1);
    }),
  );
  $("landscape-info").textContent =
    `rows θ ∈ [0, π), columns φ ∈ [0, 2π); best ${v.max.toFixed(6)} bits at ` +
    `θ=${v.argmax[0].toFixed(3)}, φ=${v.argmax[1].toFixed(3)}`;
}

await init();
$("p").addEventListener("input", guard(() => {
  $("p-value").textContent = Number($("p").value).toFixed(2);
  showMatrix();
}));
for (const id of ["scenario", "pair", "a"]) $(id).addEventListener("change", guard(showMatrix));
$("run-sweep").addEventListener("click", guard(drawSweep));
$("run-landscape").addEventListener("click", guard(drawLandscape));
guard(showMatrix)();
guard(drawSweep)();
