import init, { plotSvg, ratioCurve, coverageReport } from "./pkg/modhyp_wasm.js";

const $ = (id) => document.getElementById(id);
const big = (v) => BigInt(Math.trunc(Number(v)));

function fail(el, e) {
  el.textContent = String(e);
  el.className = "err";
}

function drawCurve(svg, points) {
  const w = svg.clientWidth, h = svg.clientHeight, pad = 30;
  const maxN = points.length ? points[points.length - 1].n : 1;
  const maxV = Math.max(2, ...points.map((p) => p.value));
  const x = (n) => pad + (n / maxN) * (w - 2 * pad);
  const y = (v) => h - pad - (v / maxV) * (h - 2 * pad);
  const dots = points
    .map((p) => {
      const fill = p.value > 1 ? "#1a7f37" : p.value < 1 ? "#b00" : "#888";
      return `<circle cx="${x(p.n)}" cy="${y(p.value)}" r="1.5" fill="${fill}"><title>n=${p.n} c2=${p.c2}</title></circle>`;
    })
    .join("");
  svg.innerHTML =
    `<line x1="${pad}" x2="${w - pad}" y1="${y(1)}" y2="${y(1)}" stroke="#999" stroke-dasharray="4 3"/>` +
    `<text x="4" y="${y(1) + 4}" font-size="11">1</text>` +
    `<text x="${w - pad}" y="${h - 8}" font-size="11" text-anchor="end">n = ${maxN}</text>` +
    dots;
}

await init();

$("plot-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const f = new FormData(ev.target);
  const msg = $("plot-msg");
  try {
    $("plot").innerHTML = plotSvg(big(f.get("a")), big(f.get("n")));
    const count = $("plot").querySelectorAll(".pt").length;
    msg.className = "";
    msg.textContent = `${count} points`;
  } catch (e) {
    fail(msg, e);
  }
});

$("curve-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const f = new FormData(ev.target);
  const msg = $("curve-msg");
  try {
    const points = JSON.parse(ratioCurve(big(f.get("a")), big(f.get("n"))));
    const above = points.filter((p) => p.value > 1).length;
    msg.className = "";
    msg.textContent = `${points.length} moduli, ${above} with c2 > 1`;
    drawCurve($("curve"), points);
  } catch (e) {
    fail(msg, e);
  }
});

$("cov-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const f = new FormData(ev.target);
  try {
    const r = JSON.parse(
      coverageReport(Number(f.get("d")), Number(f.get("m")), big(f.get("a")), big(f.get("n"))),
    );
    $("cov").className = "";
    $("cov").textContent =
      `covered: ${r.covered}\nmissing: [${r.missing.join(", ")}]\nall prime factors > 7: ${r.theorem_applies}`;
  } catch (e) {
    fail($("cov"), e);
  }
});

for (const id of ["plot-form", "curve-form", "cov-form"]) {
  $(id).requestSubmit();
}
