import init, { trace_word, solve_game, count_series } from "./pkg/parity_witness_web.js";

function call(fn, ...args) {
  const out = JSON.parse(fn(...args));
  if (out.error !== undefined) throw new Error(out.error);
  return out;
}

function fail(el, err) {
  el.className = "error";
  el.textContent = err.message;
}

function table(el, head, rows) {
  el.className = "";
  el.innerHTML = "";
  const tr = el.insertRow();
  for (const h of head) {
    const th = document.createElement("th");
    th.textContent = h;
    tr.appendChild(th);
  }
  for (const row of rows) {
    const r = el.insertRow();
    for (const cell of row) {
      const td = r.insertCell();
      if (cell instanceof Node) td.appendChild(cell);
      else td.textContent = cell;
    }
  }
}

function onSubmit(id, handler) {
  const form = document.getElementById(id);
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler(new FormData(form));
  });
}

await init();

onSubmit("trace-form", (f) => {
  const el = document.getElementById("trace-out");
  try {
    const t = call(trace_word, f.get("colours"), f.get("variant"), f.get("update"),
      BigInt(f.get("e")), Number(f.get("max")));
    let state = t.initial;
    const lines = t.steps.map((s) => {
      const line = `${state} -> (${s.colour}) -> ${s.state}`;
      state = s.state;
      return line;
    });
    lines.push(t.accepted_at === null ? "REJECTED" : `ACCEPTED at step ${t.accepted_at}`);
    el.className = "";
    el.textContent = lines.join("\n");
  } catch (err) {
    fail(el, err);
  }
});

onSubmit("solve-form", (f) => {
  const el = document.getElementById("solve-out");
  try {
    const s = call(solve_game, f.get("game"), f.get("algo"), f.get("variant"), f.get("update"));
    table(el, ["vertex", "colour", "winner"], s.vertices.map((v) => {
      const w = document.createElement("span");
      w.className = v.winner.toLowerCase();
      w.textContent = v.winner;
      return [v.name ?? v.id, v.colour, w];
    }));
  } catch (err) {
    fail(el, err);
  }
});

onSubmit("count-form", (f) => {
  const el = document.getElementById("count-out");
  try {
    const rows = call(count_series, BigInt(f.get("c")), BigInt(f.get("from")), BigInt(f.get("to")));
    table(el, ["n", "old", "jl", "new", "new/jl"],
      rows.map((r) => [r.n, r.old, r.jl, r.new, r.new_over_jl.toFixed(4)]));
  } catch (err) {
    fail(el, err);
  }
});
