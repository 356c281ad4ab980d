import init, { ackermann, build_sc, share_round_trip } from "./pkg/sscirc_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guard(out, f) {
  try {
    out.classList.remove("err");
    f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function runAckermann() {
  const out = $("ack-out");
  guard(out, () => {
    const v = JSON.parse(ackermann(num("ack-m"), num("ack-n"), num("ack-d")));
    const rows = v.rows.map((r) => `lambda_${r.d}(${v.n}) = ${r.lambda}`);
    rows.push(`alpha(${v.m}, ${v.n}) = ${v.alpha}`, `recommended depth = ${v.recommended_depth}`);
    out.textContent = rows.join("\n");
  });
}

function runBuild() {
  const info = $("sc-info");
  $("sc-svg").innerHTML = "";
  guard(info, () => {
    const v = JSON.parse(build_sc(num("sc-in"), num("sc-out"), num("sc-seed")));
    info.textContent =
      `vertices ${v.vertices}, edges ${v.edges}, depth ${v.depth} (recommended ${v.recommended_depth})\n` +
      `verdict ${v.verdict} after ${v.checked} subset pairs`;
    $("sc-svg").innerHTML = v.svg;
  });
}

function runShare() {
  const out = $("ss-out");
  guard(out, () => {
    const v = JSON.parse(share_round_trip(num("ss-t"), num("ss-n"), num("ss-secret"), num("ss-seed")));
    const lines = [`modulus ${v.modulus}, threshold ${v.threshold}, ${v.draws} draw(s)`, ""];
    v.shares.forEach((y, i) => lines.push(`share ${i}: ${y}`));
    lines.push("");
    for (const r of v.recoveries) lines.push(`{${r.coalition.join(",")}} -> ${r.secret}`);
    lines.push("", v.all_correct ? "every coalition recovered the secret" : "MISMATCH");
    out.textContent = lines.join("\n");
  });
}

await init();
$("ack-run").onclick = runAckermann;
$("sc-run").onclick = runBuild;
$("ss-run").onclick = runShare;
runAckermann();
runBuild();
runShare();
