import init, { bondCurve, referenceTable, noisyRun } from "./pkg/sizecons_web.js";

const KCAL = 627.509474;
const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function fail(out, e) {
  out.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = String(e.message ?? e);
  out.append(p);
}

// series: [{label, color, dashed, points: [[x, y], ...]}]
function chart(series, xLabel, yLabel) {
  const W = 640, H = 360, L = 70, R = 150, T = 15, B = 45;
  const pts = series.flatMap((s) => s.points);
  let [x0, x1] = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let [y0, y1] = [Math.min(...pts.map((p) => p[1])), Math.max(...pts.map((p) => p[1]))];
  if (x1 === x0) { x0 -= 1; x1 += 1; }
  if (y1 === y0) { y0 -= 1; y1 += 1; }
  const pad = 0.05 * (y1 - y0);
  y0 -= pad; y1 += pad;
  const sx = (x) => L + ((x - x0) / (x1 - x0)) * (W - L - R);
  const sy = (y) => T + ((y1 - y) / (y1 - y0)) * (H - T - B);
  const ticks = (a, b) => {
    const raw = (b - a) / 5, mag = 10 ** Math.floor(Math.log10(raw));
    const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw);
    const out = [];
    for (let v = Math.ceil(a / step) * step; v <= b + 1e-12; v += step) out.push(+v.toPrecision(10));
    return out;
  };
  let s = `<svg width="${W}" height="${H}" font-size="11">`;
  s += `<rect x="${L}" y="${T}" width="${W - L - R}" height="${H - T - B}" fill="none" stroke="#000"/>`;
  for (const t of ticks(x0, x1)) s += `<text x="${sx(t)}" y="${H - B + 15}" text-anchor="middle">${t}</text>`;
  for (const t of ticks(y0, y1)) s += `<text x="${L - 5}" y="${sy(t) + 4}" text-anchor="end">${t}</text>`;
  s += `<text x="${(L + W - R) / 2}" y="${H - 8}" text-anchor="middle">${xLabel}</text>`;
  s += `<text transform="translate(14 ${(T + H - B) / 2}) rotate(-90)" text-anchor="middle">${yLabel}</text>`;
  series.forEach((ser, k) => {
    const d = ser.points.map(([x, y]) => `${sx(x).toFixed(1)},${sy(y).toFixed(1)}`).join(" ");
    const dash = ser.dashed ? ` stroke-dasharray="6 4"` : "";
    s += `<polyline points="${d}" fill="none" stroke="${ser.color}" stroke-width="2"${dash}/>`;
    s += `<rect x="${W - R + 10}" y="${T + 18 * k}" width="12" height="12" fill="${ser.color}"/>`;
    s += `<text x="${W - R + 28}" y="${T + 18 * k + 10}">${ser.label}</text>`;
  });
  return s + "</svg>";
}

function curve() {
  const out = $("c-out");
  try {
    const rows = JSON.parse(bondCurve(num("c-min"), num("c-max"), num("c-steps")));
    out.innerHTML = chart(
      [
        { label: "Hartree-Fock", color: "#d62728", dashed: true, points: rows.map((r) => [r.bond_length, r.e_hf]) },
        { label: "FCI", color: "#1f77b4", points: rows.map((r) => [r.bond_length, r.e_fci]) },
      ],
      "bond length (Å)",
      "energy (hartree)",
    );
  } catch (e) {
    fail(out, e);
  }
}

function reference() {
  const out = $("r-out");
  try {
    const rows = JSON.parse(referenceTable(num("r-bond"), num("r-n")));
    out.innerHTML = chart(
      [
        { label: "FCI", color: "#1f77b4", points: rows.map((r) => [r.n, r.fci_correlation_per_h2 * KCAL]) },
        { label: "CISD", color: "#2ca02c", dashed: true, points: rows.map((r) => [r.n, r.cisd_correlation_per_h2 * KCAL]) },
      ],
      "N (molecules)",
      "correlation energy per H2 (kcal/mol)",
    );
    const last = rows[rows.length - 1];
    const p = document.createElement("p");
    p.textContent = `At N = ${last.n} CISD recovers ${((100 * last.cisd_correlation_per_h2) / last.fci_correlation_per_h2).toFixed(1)}% of the correlation energy per molecule; its double-excitation weight per H2 is ${last.cisd_double_per_h2.toFixed(5)} against ${last.fci_double_per_h2.toFixed(5)} for FCI.`;
    out.append(p);
  } catch (e) {
    fail(out, e);
  }
}

function noisy() {
  const out = $("n-out");
  out.textContent = "running...";
  // let the status paint before the blocking call
  setTimeout(() => {
    try {
      const t0 = performance.now();
      const r = JSON.parse(
        noisyRun(0.7414, num("n-width"), num("n-n"), num("n-shots"), num("n-ro"), num("n-g1"), num("n-g2"), num("n-seed")),
      );
      const rows = [
        ["energy per H2 (Ha)", `${r.energy_per_h2.toFixed(6)} ± ${r.stderr_per_h2.toFixed(6)}`],
        ["FCI (Ha)", r.e_fci.toFixed(6)],
        ["Hartree-Fock (Ha)", r.e_hf.toFixed(6)],
        ["error vs FCI (kcal/mol)", r.error_kcal.toFixed(2)],
        ["HF population", r.hf.toFixed(5)],
        ["double excitation", r.double_excitation.toFixed(5)],
        ["single excitation", r.single_excitation.toFixed(5)],
        ["number violating", r.number_violating.toFixed(5)],
      ];
      out.innerHTML = "<table>" + rows.map(([k, v]) => `<tr><th>${k}</th><td>${v}</td></tr>`).join("") + "</table>";
      const p = document.createElement("p");
      p.textContent = `${r.n} x H2 on ${r.n * r.representation} qubits, ${((performance.now() - t0) / 1000).toFixed(2)} s`;
      out.append(p);
    } catch (e) {
      fail(out, e);
    }
  }, 10);
}

await init();
$("c-go").onclick = curve;
$("r-go").onclick = reference;
$("n-go").onclick = noisy;
curve();
reference();
