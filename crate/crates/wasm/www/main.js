import init, { numberTables, egfTable, cardinality } from "./pkg/ratspec_wasm.js";

const $ = (id) => document.getElementById(id);

function showError(target, err) {
  target.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err.message ?? err);
  target.append(p);
}

function table(headers, rows) {
  const t = document.createElement("table");
  const head = t.createTHead().insertRow();
  for (const h of headers) {
    const th = document.createElement("th");
    th.textContent = h;
    head.append(th);
  }
  const body = t.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    for (const cell of row) tr.insertCell().textContent = cell;
  }
  return t;
}

function runNumbers() {
  const out = $("num-out");
  try {
    const poly = $("num-poly").checked;
    const result = JSON.parse(numberTables($("num-kind").value, Number($("num-order").value), poly));
    const tables = result.tables;
    const column = (t) => (poly ? t.display : t.values);
    const rows = column(tables[0]).map((_, n) => [n, ...tables.map((t) => column(t)[n])]);
    out.innerHTML = "";
    out.append(table(["n", ...tables.map((t) => t.route)], rows));
    const verdict = document.createElement("p");
    verdict.className = "verdict " + (result.match ? "ok" : "bad");
    verdict.textContent = result.match ? "MATCH: all routes agree exactly" : "MISMATCH";
    out.append(verdict);
  } catch (e) {
    showError(out, e);
  }
}

function runEgf() {
  const out = $("egf-out");
  try {
    const result = JSON.parse(egfTable($("egf-expr").value, Number($("egf-order").value)));
    out.innerHTML = "";
    out.append(table(["size", "|F([size])|"], result.coeffs));
  } catch (e) {
    showError(out, e);
  }
}

function runCard() {
  const out = $("card-out");
  try {
    const result = JSON.parse(cardinality($("card-json").value));
    out.innerHTML = "";
    const p = document.createElement("p");
    p.className = "verdict";
    p.textContent = result.cardinality;
    out.append(p);
  } catch (e) {
    showError(out, e);
  }
}

await init();
$("num-run").addEventListener("click", runNumbers);
$("egf-run").addEventListener("click", runEgf);
$("card-run").addEventListener("click", runCard);
runNumbers();
