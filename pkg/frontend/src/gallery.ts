import { api, ApiError, GalleryQuery } from './api.js';
import { clear, el } from './dom.js';
import { hiddenCount, hide, isHidden, clearHidden } from './hide.js';
import { ATTRACTOR_CLASSES, ExampleRecord } from './types.js';
import { toViewModel, ViewModelRecord } from './viewmodel.js';

const PAGE_SIZE = 24;

interface GalleryState {
  sort: 'complexity' | 'created';
  connected: '' | 'true' | 'false';
  attractorClass: string;
  minTypes: string;
  maxTypes: string;
  minFli: string;
  maxFli: string;
  records: ExampleRecord[];
  nextCursor: string | null;
  total: number;
  error: string | null;
  loading: boolean;
}

function freshState(): GalleryState {
  return {
    sort: 'complexity',
    connected: '',
    attractorClass: '',
    minTypes: '',
    maxTypes: '',
    minFli: '',
    maxFli: '',
    records: [],
    nextCursor: null,
    total: 0,
    error: null,
    loading: false,
  };
}

function buildQuery(state: GalleryState, cursor?: string): GalleryQuery {
  const query: GalleryQuery = { sort: state.sort, limit: PAGE_SIZE };
  if (cursor) query.cursor = cursor;
  if (state.connected) query.connected = state.connected === 'true';
  if (state.attractorClass) query.attractor_class = state.attractorClass;
  if (state.minTypes !== '') query.min_types = Number(state.minTypes);
  if (state.maxTypes !== '') query.max_types = Number(state.maxTypes);
  if (state.minFli !== '') query.min_fli = Number(state.minFli);
  if (state.maxFli !== '') query.max_fli = Number(state.maxFli);
  return query;
}

export function mountGallery(container: HTMLElement): { refresh: () => Promise<void> } {
  const state = freshState();

  async function loadFirstPage(): Promise<void> {
    state.loading = true;
    state.error = null;
    render();
    try {
      const page = await api.listExamples(buildQuery(state));
      state.records = page.records;
      state.nextCursor = page.next_cursor;
      state.total = page.total;
    } catch (err) {
      state.error = err instanceof ApiError ? err.message : String(err);
    }
    state.loading = false;
    render();
  }

  async function loadMore(): Promise<void> {
    if (!state.nextCursor) return;
    try {
      const page = await api.listExamples(buildQuery(state, state.nextCursor));
      state.records = state.records.concat(page.records);
      state.nextCursor = page.next_cursor;
      state.total = page.total;
    } catch (err) {
      state.error = err instanceof ApiError ? err.message : String(err);
    }
    render();
  }

  function render(): void {
    clear(container);
    container.append(toolbar());
    if (state.error) {
      container.append(el('div', { class: 'error-banner' }, state.error));
    }
    if (state.loading) {
      container.append(el('p', { class: 'muted' }, 'loading...'));
      return;
    }

    const visible = state.records.filter((r) => !isHidden(r.id)).map(toViewModel);
    if (visible.length === 0) {
      container.append(emptyState());
      return;
    }

    const grid = el('div', { class: 'gallery-grid' });
    for (const vm of visible) grid.append(card(vm));
    container.append(grid);

    if (state.nextCursor) {
      container.append(
        el('button', { class: 'load-more', onclick: () => void loadMore() }, 'Load more')
      );
    }
  }

  function toolbar(): HTMLElement {
    const sortSelect = el('select', { onchange: onControl }, option('complexity', 'by complexity', state.sort), option('created', 'by creation', state.sort));
    sortSelect.value = state.sort;

    const connectedSelect = el(
      'select',
      { onchange: onControl },
      option('', 'any connectivity', state.connected),
      option('true', 'connected', state.connected),
      option('false', 'disconnected', state.connected)
    );
    connectedSelect.value = state.connected;

    const classSelect = el(
      'select',
      { onchange: onControl },
      option('', 'any class', state.attractorClass),
      ...ATTRACTOR_CLASSES.map((c) => option(c, c, state.attractorClass))
    );
    classSelect.value = state.attractorClass;

    const bound = (placeholder: string, value: string) =>
      el('input', { type: 'number', min: '0', placeholder, value, onchange: onControl });
    const minTypes = bound('min types', state.minTypes);
    const maxTypes = bound('max types', state.maxTypes);
    const minFli = bound('min fli', state.minFli);
    const maxFli = bound('max fli', state.maxFli);

    function onControl(): void {
      state.sort = sortSelect.value as GalleryState['sort'];
      state.connected = connectedSelect.value as GalleryState['connected'];
      state.attractorClass = classSelect.value;
      state.minTypes = minTypes.value;
      state.maxTypes = maxTypes.value;
      state.minFli = minFli.value;
      state.maxFli = maxFli.value;
      void loadFirstPage();
    }

    const bar = el(
      'div',
      { class: 'gallery-toolbar' },
      sortSelect,
      connectedSelect,
      classSelect,
      minTypes,
      maxTypes,
      minFli,
      maxFli
    );
    if (hiddenCount() > 0) {
      bar.append(
        el(
          'button',
          {
            class: 'linkish',
            onclick: () => {
              clearHidden();
              render();
            },
          },
          `unhide ${hiddenCount()}`
        )
      );
    }
    return bar;
  }

  function emptyState(): HTMLElement {
    const anyFilter =
      state.connected || state.attractorClass || state.minTypes || state.maxTypes ||
      state.minFli || state.maxFli;
    if (state.total === 0 && !anyFilter) {
      return el(
        'div',
        { class: 'empty-state' },
        el('p', {}, 'The collection is empty.'),
        el('a', { href: '#/search' }, 'Start a search to find examples')
      );
    }
    return el('div', { class: 'empty-state' }, el('p', {}, 'Nothing matches these filters.'));
  }

  function card(vm: ViewModelRecord): HTMLElement {
    const node = el(
      'div',
      { class: 'card', 'data-id': vm.id },
      el('img', { src: vm.thumbnailUrl, alt: `render of ${vm.id.slice(0, 8)}`, loading: 'lazy' }),
      el('div', { class: 'card-badge' }, vm.badge),
      el(
        'div',
        { class: 'card-meta' },
        vm.classification ? el('span', { class: 'card-class' }, vm.classification) : null,
        vm.fli !== null ? el('span', {}, `fli ${vm.fli}`) : null,
        vm.alpha !== null ? el('span', {}, `α ${vm.alpha.toFixed(4)}`) : null
      ),
      el(
        'button',
        {
          class: 'hide-button',
          title: 'hide this example',
          onclick: (event: Event) => {
            event.stopPropagation();
            hide(vm.id);
            render();
          },
        },
        '×'
      )
    );
    node.addEventListener('click', () => {
      location.hash = `#/example/${vm.id}`;
    });
    return node;
  }

  void loadFirstPage();
  return { refresh: loadFirstPage };
}

function option(value: string, text: string, current: string): HTMLOptionElement {
  const node = el('option', { value }, text);
  if (value === current) node.setAttribute('selected', '');
  return node;
}
