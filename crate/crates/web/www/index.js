import init, { analyze_origami, render_svg, construct_genus } from "./pkg/origami_web.js";

const $ = (id) => document.getElementById(id);

function show(id, text, isError) {
  const el = $(id);
  el.textContent = text;
  el.className = isError ? "error" : "";
}

function analyze() {
  try {
    const a = JSON.parse(analyze_origami($("origami").value));
    show("analysis", [
      `degree        ${a.degree}`,
      `genus         ${a.genus}`,
      `stratum       ${a.stratum}`,
      `translations  ${a.translations}`,
      `normal        ${a.normal ? "yes" : "no"}`,
      `hurwitz       ${a.hurwitz ? "yes" : "no"}`,
      `canonical a   ${a.canonical_a}`,
      `canonical b   ${a.canonical_b}`,
    ].join("\n"));
  } catch (e) {
    show("analysis", e.message, true);
  }
}

function draw() {
  try {
    $("diagram").innerHTML = render_svg($("origami").value);
  } catch (e) {
    $("diagram").innerHTML = "";
    show("analysis", e.message, true);
  }
}

function construct() {
  $("hts-diagram").innerHTML = "";
  try {
    const r = JSON.parse(construct_genus(Number($("genus").value)));
    if (!r.realizable) {
      show("certificate", `Genus ${r.genus} is not realizable: ${r.reason}.`);
      return;
    }
    show("certificate", r.certificate);
    $("hts-diagram").innerHTML = r.svg ?? "<p>Too many squares to draw.</p>";
  } catch (e) {
    show("certificate", e.message, true);
  }
}

await init();
$("analyze").onclick = analyze;
$("draw").onclick = draw;
$("construct").onclick = construct;
analyze();
draw();
