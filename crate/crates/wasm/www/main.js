import init, { discord_curve, critical_time_vs_beta, decoherence_paths } from "./pkg/qdfe_wasm.js";

const ids = ["eta", "beta", "kappa", "c3", "tmax"];
const input = Object.fromEntries(ids.map((id) => [id, document.getElementById(id)]));
const status = document.getElementById("status");

function params() {
  const v = Object.fromEntries(ids.map((id) => [id, Number(input[id].value)]));
  for (const id of ids) input[id].nextElementSibling.textContent = v[id];
  return v;
}

function rows(flat, stride) {
  const out = [];
  for (let i = 0; i + stride <= flat.length; i += stride) out.push(Array.from(flat.slice(i, i + stride)));
  return out;
}

function plot(canvas, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 42;
  ctx.clearRect(0, 0, w, h);
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1])).filter(Number.isFinite);
  if (!xs.length || !ys.length) return;
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  const y0 = opts.yMin ?? Math.min(0, ...ys);
  const y1 = Math.max(...ys) * 1.05 || 1;
  const X = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const Y = (y) => h - pad + ((y0 - y) / (y1 - y0 || 1)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.beginPath();
  ctx.moveTo(pad, pad / 2);
  ctx.lineTo(pad, h - pad);
  ctx.lineTo(w - pad / 2, h - pad);
  ctx.stroke();
  for (let k = 0; k <= 4; k++) {
    const xv = x0 + ((x1 - x0) * k) / 4;
    const yv = y0 + ((y1 - y0) * k) / 4;
    ctx.fillText(xv.toPrecision(3), X(xv) - 10, h - pad + 14);
    ctx.fillText(yv.toPrecision(3), 2, Y(yv) + 4);
  }

  series.forEach((s, i) => {
    ctx.strokeStyle = ctx.fillStyle = s.color;
    if (s.dots) {
      for (const [x, y] of s.points) if (Number.isFinite(y)) ctx.fillRect(X(x) - 2, Y(y) - 2, 4, 4);
    } else {
      ctx.beginPath();
      let pen = false;
      for (const [x, y] of s.points) {
        if (!Number.isFinite(y)) { pen = false; continue; }
        pen ? ctx.lineTo(X(x), Y(y)) : ctx.moveTo(X(x), Y(y));
        pen = true;
      }
      ctx.stroke();
    }
    ctx.fillText(s.label, w - 170, 16 + 14 * i);
  });
  if (opts.marker !== undefined && Number.isFinite(opts.marker)) {
    ctx.strokeStyle = "#c60";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(X(opts.marker), pad / 2);
    ctx.lineTo(X(opts.marker), h - pad);
    ctx.stroke();
    ctx.setLineDash([]);
  }
}

function redraw() {
  const p = params();
  try {
    const curve = rows(discord_curve(p.eta, p.beta, p.kappa, p.c3, p.tmax, 400), 5);
    const firstDecay = curve.find((r) => r[4] === 0);
    const plateauEnd = curve[0][4] === 1 && firstDecay ? firstDecay[0] : undefined;
    plot(document.getElementById("curve"), [
      { label: "discord", color: "#1f5fbf", points: curve.map((r) => [r[0], r[1]]) },
      { label: "classical", color: "#2a9d4a", points: curve.map((r) => [r[0], r[2]]) },
      { label: "mutual information", color: "#999", points: curve.map((r) => [r[0], r[3]]) },
    ], { marker: plateauEnd });

    const crit = rows(critical_time_vs_beta(p.eta, p.kappa, p.c3, 0.5, 20, 80), 2);
    plot(document.getElementById("critical"), [
      { label: `t_p, κ = ${p.kappa}`, color: "#b03a2e", points: crit },
    ], { marker: p.beta });

    const gamma = rows(decoherence_paths(p.eta, p.beta, p.tmax, 41), 3);
    plot(document.getElementById("gamma"), [
      { label: "closed form", color: "#333", points: gamma.map((r) => [r[0], r[1]]) },
      { label: "quadrature", color: "#d4770c", dots: true, points: gamma.map((r) => [r[0], r[2]]) },
    ]);
    status.textContent = "";
  } catch (e) {
    status.textContent = String(e.message ?? e);
  }
}

await init();
for (const id of ids) input[id].addEventListener("input", redraw);
redraw();
