import { api, ApiError, fetchRender } from './api.js';
import { clear, el } from './dom.js';
import { dotToSvg } from './dot.js';
import { ExampleRecord } from './types.js';
import { toViewModel, ViewModelRecord } from './viewmodel.js';
import { DragRect, ViewWindow, zoomWindow } from './zoom.js';

const VIEW_SIZE = 560;

export function mountDetail(container: HTMLElement, recordId: string): void {
  clear(container);
  container.append(el('p', { class: 'muted' }, 'loading...'));
  void api
    .getExample(recordId)
    .then((record) => showRecord(container, record))
    .catch((err) => {
      clear(container);
      container.append(
        el('div', { class: 'error-banner' }, err instanceof ApiError ? err.message : String(err)),
        el('a', { href: '#/' }, 'back to gallery')
      );
    });
}

function showRecord(container: HTMLElement, record: ExampleRecord): void {
  const vm = toViewModel(record);
  clear(container);

  const viewport = el('div', { class: 'viewport' });
  const panels = el('div', { class: 'panels' });
  container.append(header(vm), el('div', { class: 'detail-columns' }, viewport, panels));

  buildViewport(viewport, vm);
  panels.append(topologyPanel(vm), dimensionPanel(vm), statsPanel(vm), specPanel(vm));
  panels.append(graphPanel(vm), lineagePanel(container, vm));
}

function header(vm: ViewModelRecord): HTMLElement {
  return el(
    'div',
    { class: 'detail-header' },
    el('a', { href: '#/' }, '← gallery'),
    el('h2', { title: vm.id }, vm.id.slice(0, 12)),
    el('span', { class: 'card-badge' }, vm.badge),
    vm.createdAt ? el('span', { class: 'muted' }, vm.createdAt) : null
  );
}

// --- render viewport with drag zoom ---------------------------------

function buildViewport(root: HTMLElement, vm: ViewModelRecord): void {
  let view: ViewWindow | null = null; // null until the auto window comes back
  let coloring: 'mono' | 'first' | 'second' = 'first';

  const img = el('img', {
    class: 'attractor',
    width: String(VIEW_SIZE),
    height: String(VIEW_SIZE),
    alt: 'attractor render',
    draggable: 'false',
  });
  const status = el('p', { class: 'render-status muted' }, 'rendering...');

  const coloringSelect = el(
    'select',
    {
      onchange: () => {
        coloring = coloringSelect.value as typeof coloring;
        void refresh();
      },
    },
    el('option', { value: 'mono' }, 'mono'),
    el('option', { value: 'first' }, 'by first index'),
    el('option', { value: 'second' }, 'by second index')
  );
  coloringSelect.value = coloring;

  const resetButton = el(
    'button',
    {
      onclick: () => {
        view = null;
        void refresh();
      },
    },
    'reset view'
  );

  async function refresh(): Promise<void> {
    status.textContent = 'rendering...';
    try {
      const result = await fetchRender(vm.id, {
        w: VIEW_SIZE,
        h: VIEW_SIZE,
        coloring,
        window: view ?? undefined,
      });
      img.src = result.url;
      if (result.window) view = result.window;
      status.textContent = view
        ? `window ${view.map((v) => shortFloat(v)).join(', ')}`
        : '';
    } catch (err) {
      // keep the last good image; only the status line reports the failure
      status.textContent = `render failed: ${
        err instanceof ApiError ? err.message : String(err)
      }`;
    }
  }

  // drag rectangle in image pixel coordinates
  let dragStart: { x: number; y: number } | null = null;
  const marquee = el('div', { class: 'marquee' });
  marquee.style.display = 'none';

  function imageCoords(event: MouseEvent): { x: number; y: number } {
    const rect = img.getBoundingClientRect();
    const scaleX = rect.width > 0 ? VIEW_SIZE / rect.width : 1;
    const scaleY = rect.height > 0 ? VIEW_SIZE / rect.height : 1;
    return { x: (event.clientX - rect.left) * scaleX, y: (event.clientY - rect.top) * scaleY };
  }

  img.addEventListener('mousedown', (event) => {
    dragStart = imageCoords(event);
    event.preventDefault();
  });
  img.addEventListener('mousemove', (event) => {
    if (!dragStart) return;
    const here = imageCoords(event);
    const rect = img.getBoundingClientRect();
    const toCss = rect.width > 0 ? rect.width / VIEW_SIZE : 1;
    marquee.style.display = 'block';
    marquee.style.left = `${Math.min(dragStart.x, here.x) * toCss}px`;
    marquee.style.top = `${Math.min(dragStart.y, here.y) * toCss}px`;
    marquee.style.width = `${Math.abs(here.x - dragStart.x) * toCss}px`;
    marquee.style.height = `${Math.abs(here.y - dragStart.y) * toCss}px`;
  });
  img.addEventListener('mouseup', (event) => {
    if (!dragStart || !view) {
      dragStart = null;
      marquee.style.display = 'none';
      return;
    }
    const here = imageCoords(event);
    const drag: DragRect = { x0: dragStart.x, y0: dragStart.y, x1: here.x, y1: here.y };
    dragStart = null;
    marquee.style.display = 'none';
    view = zoomWindow(view, drag, VIEW_SIZE, VIEW_SIZE);
    void refresh();
  });

  const frame = el('div', { class: 'view-frame' }, img, marquee);
  root.append(
    frame,
    el('div', { class: 'view-controls' }, coloringSelect, resetButton),
    status
  );
  void refresh();
}

// --- panels ---------------------------------------------------------

function topologyPanel(vm: ViewModelRecord): HTMLElement {
  const panel = el('section', { class: 'panel topology-panel' }, el('h3', {}, 'Topology'));
  const topo = vm.record.topology;
  if (!topo) {
    panel.append(el('p', { class: 'muted' }, 'not available for this outcome'));
    return panel;
  }
  panel.append(
    row('connected', topo.connected ? 'yes' : 'no'),
    row('jordan curve', topo.has_jordan_curve ? 'yes' : 'no'),
    row('class', topo.classification)
  );
  if (vm.contacts.length > 0) {
    const pairs = vm.contacts.map(([k, j]) => `${k}–${j}`).join(', ');
    panel.append(
      row('piece contacts', vm.adjacencyShape ? `${pairs} (${vm.adjacencyShape})` : pairs)
    );
  }
  return panel;
}

function dimensionPanel(vm: ViewModelRecord): HTMLElement {
  const panel = el('section', { class: 'panel dimension-panel' }, el('h3', {}, 'Dimension'));
  const dim = vm.record.dimension;
  if (!dim) {
    panel.append(el('p', { class: 'muted' }, 'not available for this outcome'));
    return panel;
  }
  // full precision on purpose: these are the served values
  panel.append(
    row('α', String(dim.alpha)),
    row('β', String(dim.beta_global)),
    row('spectral radius', String(dim.spectral_radius))
  );
  const equations = el('ul', { class: 'equations' });
  for (const eq of dim.boundary_equations) {
    const text = eq.terms.length
      ? `${eq.vertex} = ${eq.terms.map((t) => `f${t.k}(${t.src})`).join(' ∪ ')}`
      : `${eq.vertex} = ∅`;
    equations.append(el('li', {}, text));
  }
  panel.append(el('h4', {}, 'Boundary equations'), equations);
  return panel;
}

function statsPanel(vm: ViewModelRecord): HTMLElement {
  const stats = vm.record.stats;
  const panel = el(
    'section',
    { class: 'panel stats-panel' },
    el('h3', {}, 'Build'),
    row('compositions', String(stats.compositions)),
    row('pruned far', String(stats.pruned_far)),
    row('explored', String(stats.explored))
  );
  if (vm.pruneRatio !== null) {
    panel.append(row('prune ratio', vm.pruneRatio.toFixed(3)));
  }
  if (vm.fli !== null) panel.append(row('fli', String(vm.fli)));
  return panel;
}

function specPanel(vm: ViewModelRecord): HTMLElement {
  const spec = vm.record.spec;
  const maps = el('ol', { class: 'map-list' });
  for (const map of spec.maps) {
    const sym = `${map.sym.x}, ${map.sym.y}${map.sym.reflected ? ', reflected' : ''}`;
    maps.append(el('li', {}, `(${sym})  t = (${map.t[0]}, ${map.t[1]})`));
  }
  return el(
    'section',
    { class: 'panel spec-panel' },
    el('h3', {}, 'Spec'),
    row('field a', spec.field.a),
    row('expansion', `b = ${spec.expansion.b}, c = ${spec.expansion.c}`),
    maps
  );
}

function graphPanel(vm: ViewModelRecord): HTMLElement {
  const panel = el('section', { class: 'panel graph-panel' }, el('h3', {}, 'Neighbor graph'));
  const holder = el('div', { class: 'graph-holder' }, el('p', { class: 'muted' }, 'loading...'));
  panel.append(holder);
  void api
    .fetchDot(vm.id)
    .then((dot) => {
      holder.innerHTML = dotToSvg(dot);
    })
    .catch((err) => {
      clear(holder);
      holder.append(
        el('p', { class: 'error-banner' }, err instanceof ApiError ? err.message : String(err))
      );
    });
  return panel;
}

function lineagePanel(container: HTMLElement, vm: ViewModelRecord): HTMLElement {
  const panel = el('section', { class: 'panel lineage-panel' }, el('h3', {}, 'Lineage'));
  if (vm.parent) {
    panel.append(
      el('p', {}, 'parent ', el('a', { href: `#/example/${vm.parent}` }, vm.parent.slice(0, 12)))
    );
  }
  const childList = el('ul', { class: 'child-list' });
  panel.append(childList);

  const message = el('p', { class: 'mutate-message' });
  const button = el(
    'button',
    {
      class: 'mutate-button',
      onclick: () => void runMutation(),
    },
    'Mutate'
  ) as HTMLButtonElement;

  async function runMutation(): Promise<void> {
    button.disabled = true;
    message.textContent = 'mutating...';
    message.classList.remove('error-banner');
    try {
      const child = await api.mutateExample(vm.id);
      childList.append(
        el(
          'li',
          {},
          `${vm.id.slice(0, 8)} → `,
          el('a', { href: `#/example/${child.id}` }, child.id.slice(0, 12))
        )
      );
      message.textContent = `child ${child.id.slice(0, 12)} stored`;
      location.hash = `#/example/${child.id}`;
    } catch (err) {
      message.textContent =
        err instanceof ApiError ? `mutation failed: ${err.message}` : String(err);
      message.classList.add('error-banner');
    }
    button.disabled = false;
  }

  panel.append(button, message);
  return panel;
}

function row(label: string, value: string): HTMLElement {
  return el(
    'div',
    { class: 'kv-row' },
    el('span', { class: 'kv-label' }, label),
    el('span', { class: 'kv-value' }, value)
  );
}

function shortFloat(v: number): string {
  const text = String(v);
  return text.length > 10 ? v.toPrecision(6) : text;
}
