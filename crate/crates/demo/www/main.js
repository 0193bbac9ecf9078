import init, { eigenfunction_curves, spectrum_vs_mu, kummer_vs_a, azeros } from "./pkg/singular_spectra_demo.js";

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];
const PAD = 40;

const num = (id) => Number(document.getElementById(id).value);

// Draws polylines {xs, ys, color, dash} into a canvas with a shared frame.
function plot(id, lines, marks = []) {
  const c = document.getElementById(id);
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const all = (f) => lines.flatMap(f).filter(Number.isFinite);
  const xmin = Math.min(...all((l) => l.xs)), xmax = Math.max(...all((l) => l.xs));
  let ymin = Math.min(...all((l) => l.ys)), ymax = Math.max(...all((l) => l.ys));
  if (ymin === ymax) { ymin -= 1; ymax += 1; }
  const sx = (x) => PAD + (x - xmin) / (xmax - xmin || 1) * (c.width - 2 * PAD);
  const sy = (y) => c.height - PAD - (y - ymin) / (ymax - ymin) * (c.height - 2 * PAD);

  g.strokeStyle = "#999";
  g.setLineDash([]);
  g.strokeRect(PAD, PAD, c.width - 2 * PAD, c.height - 2 * PAD);
  if (ymin < 0 && ymax > 0) {
    g.beginPath(); g.moveTo(PAD, sy(0)); g.lineTo(c.width - PAD, sy(0)); g.stroke();
  }
  g.fillStyle = "#333";
  g.font = "11px sans-serif";
  g.fillText(xmin.toPrecision(3), PAD, c.height - PAD + 14);
  g.fillText(xmax.toPrecision(3), c.width - PAD - 30, c.height - PAD + 14);
  g.fillText(ymax.toPrecision(3), 2, PAD + 4);
  g.fillText(ymin.toPrecision(3), 2, c.height - PAD);

  for (const l of lines) {
    g.strokeStyle = l.color;
    g.setLineDash(l.dash ? [4, 4] : []);
    g.beginPath();
    l.xs.forEach((x, i) => (i ? g.lineTo(sx(x), sy(l.ys[i])) : g.moveTo(sx(x), sy(l.ys[i]))));
    g.stroke();
  }
  g.setLineDash([]);
  g.strokeStyle = "#000";
  for (const m of marks) {
    if (m < xmin || m > xmax) continue;
    g.beginPath(); g.moveTo(sx(m), sy(0) - 6); g.lineTo(sx(m), sy(0) + 6); g.stroke();
  }
}

function guarded(errId, f) {
  return () => {
    const err = document.getElementById(errId);
    err.textContent = "";
    try { f(); } catch (e) { err.textContent = String(e.message ?? e); }
  };
}

const eigen = guarded("ef-err", () => {
  const n = 400, kmax = num("ef-kmax");
  const v = eigenfunction_curves(num("ef-nu"), num("ef-xi"), kmax, n);
  const xs = Array.from(v.subarray(0, n));
  const lines = [];
  for (let k = 0; k <= kmax; k++) {
    lines.push({ xs, ys: Array.from(v.subarray(n * (k + 1), n * (k + 2))), color: COLORS[k % COLORS.length] });
  }
  plot("ef", lines);
});

const spectrum = guarded("sp-err", () => {
  const kmax = num("sp-kmax"), steps = 40, m = kmax + 1;
  const v = spectrum_vs_mu(num("sp-nu"), num("sp-lo"), num("sp-hi"), steps, kmax);
  const mu = v.subarray(0, m);
  const xs = [], ys = Array.from({ length: m }, () => []);
  for (let i = 0; i < steps; i++) {
    const row = v.subarray(m + i * (m + 1), m + (i + 1) * (m + 1));
    xs.push(row[0]);
    for (let k = 0; k < m; k++) ys[k].push(row[k + 1]);
  }
  const lines = [];
  for (let k = 0; k < m; k++) {
    const color = COLORS[k % COLORS.length];
    lines.push({ xs, ys: ys[k], color });
    lines.push({ xs: [xs[0], xs[steps - 1]], ys: [mu[k], mu[k]], color, dash: true });
  }
  plot("sp", lines);
});

const kummer = guarded("km-err", () => {
  const n = 600, b = num("km-b"), xi = num("km-xi"), lo = num("km-lo");
  const v = kummer_vs_a(b, xi, lo, num("km-hi"), n);
  const xs = Array.from(v.subarray(0, n));
  const ys = Array.from(v.subarray(n), Math.asinh);
  const zeros = Array.from(azeros(b, xi, Math.min(41, Math.max(1, Math.ceil(-lo) + 2))));
  plot("km", [{ xs, ys, color: COLORS[0] }], zeros);
});

await init();
document.getElementById("ef-go").onclick = eigen;
document.getElementById("sp-go").onclick = spectrum;
document.getElementById("km-go").onclick = kummer;
eigen(); spectrum(); kummer();
